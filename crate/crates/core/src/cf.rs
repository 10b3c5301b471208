//! Regular and modular continued fractions.
//!
//! Quadratic irrationals are expanded with the integer `(P, Q)` recurrence on
//! `(P+√D)/Q`; the period is found by the first repetition of the state, which
//! makes the stored preperiod minimal and the stored period primitive.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, ceil_surd, floor_surd, mul, sub, Surd};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::period::is_primitive_period;
use crate::Int;

/// `[α₀, …, α_{N−1}, [a₁, …, a_P]]`; the period is empty for rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CfExpansion {
    pub preperiod: Vec<Int>,
    pub period: Vec<Int>,
}

impl CfExpansion {
    pub fn finite(terms: Vec<Int>) -> Self {
        CfExpansion {
            preperiod: terms,
            period: Vec::new(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Terms of a finite expansion.
    pub fn terms(&self) -> &[Int] {
        &self.preperiod
    }

    /// Value of a finite expansion as `(num, den)` with `den > 0`, in lowest terms.
    pub fn evaluate(&self) -> Result<(Int, Int)> {
        if !self.is_finite() || self.preperiod.is_empty() {
            return Err(Error::domain("only non-empty finite expansions can be evaluated"));
        }
        let (mut p, mut q): (Int, Int) = (1, 0);
        for &a in self.preperiod.iter().rev() {
            // a + 1/(p/q) = (a p + q)/p
            let np = add(mul(a, p)?, q)?;
            q = p;
            p = np;
        }
        if q < 0 {
            p = -p;
            q = -q;
        }
        let g = arith::gcd(p, q);
        Ok((p / g, q / g))
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre: Vec<String> = self.preperiod.iter().map(|a| a.to_string()).collect();
        if self.period.is_empty() {
            return write!(f, "[{}]", pre.join(","));
        }
        let mut parts = pre;
        parts.push(format_period(&self.period));
        write!(f, "[{}]", parts.join(","))
    }
}

/// `[a1,a2,...]`
pub fn format_period(p: &[Int]) -> String {
    let items: Vec<String> = p.iter().map(|a| a.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// `((c1,...,ct))`
pub fn format_modular_period(p: &[Int]) -> String {
    let items: Vec<String> = p.iter().map(|a| a.to_string()).collect();
    format!("(({}))", items.join(","))
}

/// `ξ = b₀ − 1/(b₁ − 1/(b₂ − …))` with `bᵢ ≥ 2` after the first digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModularCf {
    pub preperiod: Vec<Int>,
    pub period: Vec<Int>,
}

impl fmt::Display for ModularCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() {
            return f.write_str(&format_modular_period(&self.period));
        }
        let mut parts: Vec<String> = self.preperiod.iter().map(|a| a.to_string()).collect();
        parts.push(format!("({})", {
            let v: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
            v.join(",")
        }));
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Euclidean expansion of `num/den`; the last term exceeds 1 unless the
/// expansion has a single term.
pub fn cf_rational(num: Int, den: Int) -> Result<CfExpansion> {
    if den <= 0 {
        return Err(Error::domain(format!("denominator must be positive, got {den}")));
    }
    let (mut a, mut b) = (num, den);
    let mut terms = Vec::new();
    while b != 0 {
        let q = a.div_euclid(b);
        let r = a.rem_euclid(b);
        terms.push(q);
        a = b;
        b = r;
    }
    Ok(CfExpansion::finite(terms))
}

/// The odd or even continued fraction of a rational `r > 1`: the expansion
/// itself when its length already has the requested parity, otherwise the
/// same value with the last term split as `…, a_N − 1, 1` (or, for an input
/// ending in such a split, merged back).
pub fn cf_parity_variant(cf: &CfExpansion, parity: Parity) -> Result<CfExpansion> {
    let t = cf.terms();
    if !cf.is_finite() || t.is_empty() {
        return Err(Error::domain("parity variants exist only for finite expansions"));
    }
    let exceeds_one = t[0] >= 2 || (t[0] == 1 && t.len() > 1);
    if !exceeds_one || t[1..].iter().any(|&a| a < 1) {
        return Err(Error::domain(format!("expansion {cf} does not represent a value > 1")));
    }
    let want_odd = parity == Parity::Odd;
    if (t.len() % 2 == 1) == want_odd {
        return Ok(cf.clone());
    }
    let mut out = t.to_vec();
    let last = *out.last().expect("non-empty");
    if last == 1 && out.len() >= 2 {
        out.pop();
        *out.last_mut().expect("len ≥ 1") += 1;
    } else {
        *out.last_mut().expect("non-empty") -= 1;
        out.push(1);
    }
    Ok(CfExpansion::finite(out))
}

fn require_irrational(f: &Form) -> Result<Int> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    if f.m == 0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    Ok(delta)
}

/// Expands an irrational surd into its (eventually periodic) regular continued fraction.
pub fn expand_surd(s: &Surd) -> Result<CfExpansion> {
    if s.is_rational() {
        return Err(Error::SquareDiscriminant(s.d()));
    }
    let d = s.d();
    let (mut p, mut q) = (s.p(), s.q());
    let mut seen: HashMap<(Int, Int), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p, q)) {
            let period = digits.split_off(start);
            return Ok(CfExpansion {
                preperiod: digits,
                period,
            });
        }
        seen.insert((p, q), digits.len());
        let cur = Surd::new(p, q, d)?;
        let a = floor_surd(&cur)?;
        digits.push(a);
        // 1/(ξ − a) = (P' + √D)/Q' with P' = aQ − P, Q' = (D − P'²)/Q
        let np = sub(mul(a, q)?, p)?;
        let nq = sub(d, mul(np, np)?)? / q;
        p = np;
        q = nq;
    }
}

/// Expands an irrational surd into its modular (minus) continued fraction.
pub fn expand_surd_modular(s: &Surd) -> Result<ModularCf> {
    if s.is_rational() {
        return Err(Error::SquareDiscriminant(s.d()));
    }
    let d = s.d();
    let (mut p, mut q) = (s.p(), s.q());
    let mut seen: HashMap<(Int, Int), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p, q)) {
            let period = digits.split_off(start);
            return Ok(ModularCf {
                preperiod: digits,
                period,
            });
        }
        seen.insert((p, q), digits.len());
        let cur = Surd::new(p, q, d)?;
        let b = ceil_surd(&cur)?;
        digits.push(b);
        // 1/(b − ξ) = (P' + √D)/Q' with P' = bQ − P, Q' = (P'² − D)/Q
        let np = sub(mul(b, q)?, p)?;
        let nq = sub(mul(np, np)?, d)? / q;
        p = np;
        q = nq;
    }
}

/// Regular continued fraction of `ξ⁺(f)`.
pub fn cf_surd(f: &Form) -> Result<CfExpansion> {
    require_irrational(f)?;
    expand_surd(&f.plus_root()?)
}

/// `Γ(f)`: the period of `ξ⁺(f)` in the rotation where it first occurs.
pub fn period_of_class(f: &Form) -> Result<Vec<Int>> {
    Ok(cf_surd(f)?.period)
}

/// Periods of `ξ⁺(f)` and `ξ⁻(f)`.
pub fn period_inverse_pair(f: &Form) -> Result<(Vec<Int>, Vec<Int>)> {
    require_irrational(f)?;
    let (plus, minus) = f.roots()?;
    Ok((expand_surd(&plus)?.period, expand_surd(&minus)?.period))
}

/// Modular continued fraction of `ξ⁺(f)`.
pub fn modular_cf_surd(f: &Form) -> Result<ModularCf> {
    require_irrational(f)?;
    expand_surd_modular(&f.plus_root()?)
}

/// Converts an even-length regular period `Π = [a₁, …, a_p]` into the
/// modular period: odd-indexed `a` become `a + 2`, even-indexed `a` become
/// `a − 1` copies of `2`.
pub fn cf_period_to_modular_period(pi: &[Int]) -> Result<Vec<Int>> {
    if pi.is_empty() || pi.len() % 2 == 1 {
        return Err(Error::domain(format!(
            "period {} must have positive even length",
            format_period(pi)
        )));
    }
    if pi.iter().any(|&a| a < 1) {
        return Err(Error::domain("period elements must be positive"));
    }
    let mut out = Vec::new();
    for (i, &a) in pi.iter().enumerate() {
        if i % 2 == 0 {
            out.push(add(a, 2)?);
        } else {
            for _ in 1..a {
                out.push(2);
            }
        }
    }
    Ok(out)
}

/// `Π`: the period itself when its length is even, otherwise the period twice.
pub fn doubled_period(gamma: &[Int]) -> Vec<Int> {
    if gamma.len() % 2 == 0 {
        gamma.to_vec()
    } else {
        gamma.iter().chain(gamma.iter()).copied().collect()
    }
}

/// The primitive form whose `ξ⁺` is the purely periodic `[[s]]`, and its
/// antipodal form. Between them they cover every class with period a
/// rotation of `s`.
pub fn period_to_forms(s: &[Int]) -> Result<(Form, Form)> {
    period_to_forms_scaled(s, 1)
}

/// As [`period_to_forms`], with both forms multiplied by `scale > 0`.
pub fn period_to_forms_scaled(s: &[Int], scale: Int) -> Result<(Form, Form)> {
    if s.is_empty() || s.iter().any(|&a| a < 1) {
        return Err(Error::domain("period must be non-empty with positive elements"));
    }
    if scale <= 0 {
        return Err(Error::domain("scale must be positive"));
    }
    if !is_primitive_period(s) {
        return Err(Error::NonPrimitivePeriod(s.to_vec()));
    }
    // (p p'; q q') = Π (aᵢ 1; 1 0)
    let (mut p, mut pp, mut q, mut qp): (Int, Int, Int, Int) = (1, 0, 0, 1);
    for &a in s {
        let (np, npp) = (add(mul(p, a)?, pp)?, p);
        let (nq, nqp) = (add(mul(q, a)?, qp)?, q);
        p = np;
        pp = npp;
        q = nq;
        qp = nqp;
    }
    // ξ = (pξ + p')/(qξ + q')  ⇒  qξ² + (q' − p)ξ − p' = 0
    let raw = Form::new(q, -pp, sub(qp, p)?);
    let prim = raw.scaled_down();
    let f = Form::new(mul(prim.m, scale)?, mul(prim.n, scale)?, mul(prim.k, scale)?);
    Ok((f, f.involution(crate::form::Involution::Antipodal)))
}
