//! Rendering of class reports and statistics as Markdown, CSV and JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::census::StatsRow;
use crate::cf::format_period;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::period::{ClassReport, SymmetryType};
use crate::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::domain(format!("unknown format {s:?}"))),
        }
    }
}

/// A [`ClassReport`] flattened to scalar fields, one CSV row or JSON record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub delta: Int,
    pub m: Int,
    pub n: Int,
    pub k: Int,
    pub gamma: String,
    pub cf_k_over_m: String,
    pub length: usize,
    pub t: Int,
    pub t_up: Int,
    pub t_down: Int,
    pub symmetry: String,
    pub primitive: bool,
}

fn seq(s: &[Int]) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format_period(s)
    }
}

/// Parses `[a,b,c]`; the empty string is the empty sequence.
pub fn parse_sequence(s: &str) -> Result<Vec<Int>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::domain(format!("malformed sequence {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<Int>()
                .map_err(|_| Error::domain(format!("malformed sequence {s:?}")))
        })
        .collect()
}

impl From<&ClassReport> for ClassRow {
    fn from(r: &ClassReport) -> Self {
        ClassRow {
            delta: r.delta,
            m: r.representative.m,
            n: r.representative.n,
            k: r.representative.k,
            gamma: seq(&r.gamma),
            cf_k_over_m: seq(&r.cf_k_over_m),
            length: r.length,
            t: r.t,
            t_up: r.t_up,
            t_down: r.t_down,
            symmetry: r.symmetry.label().to_string(),
            primitive: r.primitive,
        }
    }
}

impl ClassRow {
    pub fn to_report(&self) -> Result<ClassReport> {
        Ok(ClassReport {
            representative: Form::new(self.m, self.n, self.k),
            delta: self.delta,
            gamma: parse_sequence(&self.gamma)?,
            cf_k_over_m: parse_sequence(&self.cf_k_over_m)?,
            length: self.length,
            t: self.t,
            t_up: self.t_up,
            t_down: self.t_down,
            symmetry: self.symmetry.parse()?,
            primitive: self.primitive,
        })
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn to_json<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_class_csv(text: &str) -> Result<Vec<ClassReport>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize::<ClassRow>()
        .map(|r| r.map_err(|e| Error::domain(e.to_string()))?.to_report())
        .collect()
}

pub fn parse_class_json(text: &str) -> Result<Vec<ClassReport>> {
    let rows: Vec<ClassRow> =
        serde_json::from_str(text).map_err(|e| Error::domain(e.to_string()))?;
    rows.iter().map(ClassRow::to_report).collect()
}

fn star(r: &ClassReport) -> &'static str {
    if r.primitive {
        ""
    } else {
        "*"
    }
}

fn markdown_nonzero(out: &mut String, rows: &[&ClassReport]) {
    out.push_str("| Δ | m | n | k | Γ | P | t↑-t↓ | symm. | n.p. |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let f = r.representative;
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {}-{} | {} | {} |",
            r.delta,
            f.m,
            f.n,
            f.k,
            format_period(&r.gamma),
            r.length,
            r.t_up,
            r.t_down,
            r.symmetry.short_label(),
            star(r)
        );
    }
}

fn markdown_zero(out: &mut String, rows: &[&ClassReport]) {
    out.push_str("| Δ | m | n | k | k/m | L | t | t↑-t↓ | symm. | n.p. |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let f = r.representative;
        let cf = if r.cf_k_over_m.is_empty() {
            "0".to_string()
        } else {
            format_period(&r.cf_k_over_m)
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {}-{} | {} | {} |",
            r.delta,
            f.m,
            f.n,
            f.k,
            cf,
            r.length,
            r.t,
            r.t_up,
            r.t_down,
            r.symmetry.short_label(),
            star(r)
        );
    }
}

/// Renders class reports; Markdown splits square and non-square
/// discriminants into the two table layouts.
pub fn render_classes(reports: &[ClassReport], format: Format) -> Result<String> {
    match format {
        Format::Markdown => {
            let (zero, nonzero): (Vec<&ClassReport>, Vec<&ClassReport>) =
                reports.iter().partition(|r| arith::is_square(r.delta));
            let mut out = String::new();
            if !nonzero.is_empty() {
                markdown_nonzero(&mut out, &nonzero);
            }
            if !zero.is_empty() {
                if !out.is_empty() {
                    out.push('\n');
                }
                markdown_zero(&mut out, &zero);
            }
            Ok(out)
        }
        Format::Csv => to_csv(&reports.iter().map(ClassRow::from).collect::<Vec<_>>()),
        Format::Json => to_json(&reports.iter().map(ClassRow::from).collect::<Vec<_>>()),
    }
}

/// A statistics row with the fraction of each type as a decimal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub delta: Int,
    pub square: bool,
    pub total: usize,
    pub asymmetric: usize,
    pub k_symmetric: usize,
    pub m_plus_n_symmetric: usize,
    pub antisymmetric: usize,
    pub supersymmetric: usize,
    pub frac_asymmetric: f64,
    pub frac_k_symmetric: f64,
    pub frac_m_plus_n_symmetric: f64,
    pub frac_antisymmetric: f64,
    pub frac_supersymmetric: f64,
}

impl From<&StatsRow> for StatsRecord {
    fn from(r: &StatsRow) -> Self {
        let frac = |t: SymmetryType| {
            let (num, den) = r.fraction(t);
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        StatsRecord {
            delta: r.delta,
            square: r.square,
            total: r.total,
            asymmetric: r.asymmetric,
            k_symmetric: r.k_symmetric,
            m_plus_n_symmetric: r.m_plus_n_symmetric,
            antisymmetric: r.antisymmetric,
            supersymmetric: r.supersymmetric,
            frac_asymmetric: frac(SymmetryType::Asymmetric),
            frac_k_symmetric: frac(SymmetryType::KSymmetric),
            frac_m_plus_n_symmetric: frac(SymmetryType::MPlusNSymmetric),
            frac_antisymmetric: frac(SymmetryType::Antisymmetric),
            frac_supersymmetric: frac(SymmetryType::Supersymmetric),
        }
    }
}

pub fn render_stats(rows: &[StatsRow], format: Format) -> Result<String> {
    let records: Vec<StatsRecord> = rows.iter().map(StatsRecord::from).collect();
    match format {
        Format::Csv => to_csv(&records),
        Format::Json => to_json(&records),
        Format::Markdown => {
            let mut out = String::from(
                "| Δ | square | total | asymm | k | m+n | anti | super |\n|---|---|---|---|---|---|---|---|\n",
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.delta,
                    if r.square { "yes" } else { "no" },
                    r.total,
                    r.asymmetric,
                    r.k_symmetric,
                    r.m_plus_n_symmetric,
                    r.antisymmetric,
                    r.supersymmetric
                );
            }
            Ok(out)
        }
    }
}
