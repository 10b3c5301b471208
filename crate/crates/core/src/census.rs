//! Enumeration of all classes of a given discriminant, the appendix-style
//! tables and the per-discriminant symmetry statistics.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, isqrt};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::oracle::h0_cycle_walk;
use crate::period::{self, ClassReport, SymmetryType};
use crate::Int;

/// `Δ > 0` and `Δ ≡ 0, 1 (mod 4)`.
pub fn is_eligible(delta: Int) -> bool {
    delta > 0 && matches!(delta.rem_euclid(4), 0 | 1)
}

/// All forms of discriminant `Δ` with `m > 0 > n`, sorted.
pub fn h0_forms(delta: Int) -> Result<Vec<Form>> {
    if !is_eligible(delta) {
        return Err(Error::domain(format!("{delta} is not a discriminant")));
    }
    let mut out = Vec::new();
    let mut k = -isqrt(delta)?;
    while k * k >= delta {
        k += 1;
    }
    if (k - delta).rem_euclid(2) != 0 {
        k += 1;
    }
    while k * k < delta {
        // −mn = (Δ − k²)/4
        let p = (delta - k * k) / 4;
        let mut d: Int = 1;
        while d * d <= p {
            if p % d == 0 {
                out.push(Form::new(d, -(p / d), k));
                if d * d != p {
                    out.push(Form::new(p / d, -d, k));
                }
            }
            d += 1;
        }
        k += 2;
    }
    out.sort();
    Ok(out)
}

/// The `H⁰` cycles of discriminant `Δ`, one per class.
pub fn h0_cycles(delta: Int) -> Result<Vec<Vec<Form>>> {
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    let forms = h0_forms(delta)?;
    let mut seen = HashSet::new();
    let mut cycles = Vec::new();
    for f in forms {
        if seen.contains(&f) {
            continue;
        }
        let (cycle, _) = h0_cycle_walk(&f)?;
        seen.extend(cycle.iter().copied());
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Representative of a class from its `H⁰` cycle: a form with
/// `0 < ξ⁺ < 1` and `ξ⁻ < −1` (that is `k > |m + n|`), self-adjoint if
/// possible, otherwise the least such form by `(m + |n|, m)`.
pub fn choose_representative(cycle: &[Form]) -> Result<Form> {
    cycle
        .iter()
        .filter(|f| f.k > (f.m + f.n).abs())
        .min_by_key(|f| (f.m != -f.n, f.m - f.n, f.k, f.m))
        .copied()
        .ok_or_else(|| Error::Internal("H0 cycle without a B-run start".into()))
}

/// Reports for every class of discriminant `Δ`.
pub fn classes(delta: Int) -> Result<Vec<ClassReport>> {
    if !is_eligible(delta) {
        return Err(Error::domain(format!("{delta} is not a discriminant")));
    }
    if arith::is_square(delta) {
        let k = delta.isqrt();
        return (0..k).map(|m| period::square_report(m, k)).collect();
    }
    let mut reps = h0_cycles(delta)?
        .iter()
        .map(|c| choose_representative(c))
        .collect::<Result<Vec<_>>>()?;
    reps.sort_by_key(|f| (f.m - f.n, f.k, f.m));
    reps.iter().map(period::classify_class).collect()
}

/// Which discriminants a table covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    /// Non-square `Δ`: classes not representing zero.
    NonZero,
    /// Square `Δ`: classes representing zero.
    Zero,
    All,
}

impl TableKind {
    fn includes(self, delta: Int) -> bool {
        match self {
            TableKind::NonZero => !arith::is_square(delta),
            TableKind::Zero => arith::is_square(delta),
            TableKind::All => true,
        }
    }
}

pub fn eligible_discriminants(delta_max: Int, kind: TableKind) -> Vec<Int> {
    (1..=delta_max)
        .filter(|&d| is_eligible(d) && kind.includes(d))
        .collect()
}

/// All class reports with `Δ ≤ delta_max`, ordered by `Δ`.
pub fn table(delta_max: Int, kind: TableKind) -> Result<Vec<ClassReport>> {
    let per_delta: Vec<Vec<ClassReport>> = eligible_discriminants(delta_max, kind)
        .into_par_iter()
        .map(classes)
        .collect::<Result<_>>()?;
    Ok(per_delta.into_iter().flatten().collect())
}

/// Number of classes of each symmetry type for one discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRow {
    pub delta: Int,
    pub square: bool,
    pub total: usize,
    pub asymmetric: usize,
    pub k_symmetric: usize,
    pub m_plus_n_symmetric: usize,
    pub antisymmetric: usize,
    pub supersymmetric: usize,
}

impl StatsRow {
    pub fn from_reports(delta: Int, reports: &[ClassReport]) -> Self {
        let count = |t: SymmetryType| reports.iter().filter(|r| r.symmetry == t).count();
        StatsRow {
            delta,
            square: arith::is_square(delta),
            total: reports.len(),
            asymmetric: count(SymmetryType::Asymmetric),
            k_symmetric: count(SymmetryType::KSymmetric),
            m_plus_n_symmetric: count(SymmetryType::MPlusNSymmetric),
            antisymmetric: count(SymmetryType::Antisymmetric),
            supersymmetric: count(SymmetryType::Supersymmetric),
        }
    }

    pub fn count(&self, t: SymmetryType) -> usize {
        match t {
            SymmetryType::Asymmetric => self.asymmetric,
            SymmetryType::KSymmetric => self.k_symmetric,
            SymmetryType::MPlusNSymmetric => self.m_plus_n_symmetric,
            SymmetryType::Antisymmetric => self.antisymmetric,
            SymmetryType::Supersymmetric => self.supersymmetric,
        }
    }

    /// Fraction of the classes of this discriminant with type `t`, as a
    /// `(numerator, denominator)` pair.
    pub fn fraction(&self, t: SymmetryType) -> (usize, usize) {
        (self.count(t), self.total)
    }
}

pub fn stats(delta_max: Int, kind: TableKind) -> Result<Vec<StatsRow>> {
    eligible_discriminants(delta_max, kind)
        .into_par_iter()
        .map(|d| classes(d).map(|r| StatsRow::from_reports(d, &r)))
        .collect()
}
