//! Binary quadratic forms `mx² + ny² + kxy`, the involutions of the form
//! space, the action of the generators `A`, `B`, `R` and domain membership.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, mul, neg, sub, Surd};
use crate::error::{Error, Result};
use crate::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub m: Int,
    pub n: Int,
    pub k: Int,
}

impl Form {
    pub const fn new(m: Int, n: Int, k: Int) -> Self {
        Form { m, n, k }
    }

    /// `k² − 4mn`.
    pub fn discriminant(&self) -> Result<Int> {
        sub(mul(self.k, self.k)?, mul(4, mul(self.m, self.n)?)?)
    }

    pub fn involution(&self, which: Involution) -> Form {
        let Form { m, n, k } = *self;
        match which {
            Involution::Complementary => Form::new(n, m, -k),
            Involution::Conjugate => Form::new(m, n, -k),
            Involution::Adjoint => Form::new(-n, -m, k),
            Involution::Antipodal => Form::new(-n, -m, -k),
            Involution::Opposite => Form::new(-m, -n, -k),
        }
    }

    pub fn apply(&self, g: Generator) -> Result<Form> {
        let Form { m, n, k } = *self;
        Ok(match g {
            Generator::A => Form::new(m, add(add(m, n)?, k)?, add(mul(2, m)?, k)?),
            Generator::AInv => Form::new(m, add(sub(m, k)?, n)?, sub(k, mul(2, m)?)?),
            Generator::B => Form::new(add(add(m, n)?, k)?, n, add(mul(2, n)?, k)?),
            Generator::BInv => Form::new(sub(add(m, n)?, k)?, n, sub(k, mul(2, n)?)?),
            Generator::R => Form::new(n, m, neg(k)?),
        })
    }

    pub fn apply_pow(&self, g: Generator, exp: u64) -> Result<Form> {
        let mut f = *self;
        for _ in 0..exp {
            f = f.apply(g)?;
        }
        Ok(f)
    }

    /// Applies the steps of `w` in order, first step first.
    pub fn apply_word(&self, w: &GeneratorWord) -> Result<Form> {
        w.steps()
            .iter()
            .try_fold(*self, |f, &(g, e)| f.apply_pow(g, e))
    }

    /// `(ξ⁺, ξ⁻) = ((−k+√Δ)/2m, (−k−√Δ)/2m)`.
    pub fn roots(&self) -> Result<(Surd, Surd)> {
        if self.m == 0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let delta = self.discriminant()?;
        if delta < 0 {
            return Err(Error::domain(format!("negative discriminant {delta}")));
        }
        let two_m = mul(2, self.m)?;
        let plus = Surd::new(neg(self.k)?, two_m, delta)?;
        // (−k−√Δ)/2m = (k+√Δ)/(−2m)
        let minus = Surd::new(self.k, neg(two_m)?, delta)?;
        Ok((plus, minus))
    }

    pub fn plus_root(&self) -> Result<Surd> {
        Ok(self.roots()?.0)
    }

    /// Primitive iff `gcd(m, n, k) = 1`; the zero form is not primitive.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// `gcd(|m|, |n|, |k|)`.
    pub fn content(&self) -> Int {
        arith::gcd(arith::gcd(self.m, self.n), self.k)
    }

    pub fn scaled_down(&self) -> Form {
        let g = self.content();
        if g <= 1 {
            *self
        } else {
            Form::new(self.m / g, self.n / g, self.k / g)
        }
    }

    pub fn max_abs(&self) -> Int {
        self.m.abs().max(self.n.abs()).max(self.k.abs())
    }

    pub fn in_h0(&self) -> bool {
        self.m > 0 && self.n < 0
    }

    pub fn domain(&self) -> Result<DomainLabel> {
        domain_of(self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, self.k)
    }
}

pub fn discriminant(f: &Form) -> Result<Int> {
    f.discriminant()
}

pub fn involution(f: &Form, which: Involution) -> Form {
    f.involution(which)
}

pub fn apply_generator(f: &Form, g: Generator) -> Result<Form> {
    f.apply(g)
}

pub fn apply_word(f: &Form, w: &GeneratorWord) -> Result<Form> {
    f.apply_word(w)
}

pub fn roots(f: &Form) -> Result<(Surd, Surd)> {
    f.roots()
}

pub fn is_primitive(f: &Form) -> bool {
    f.is_primitive()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    /// `(n, m, −k)`; the image of `R`, always in the same class.
    Complementary,
    /// `(m, n, −k)`
    Conjugate,
    /// `(−n, −m, k)`
    Adjoint,
    /// `(−n, −m, −k)`
    Antipodal,
    /// `(−m, −n, −k)`
    Opposite,
}

impl Involution {
    pub const ALL: [Involution; 5] = [
        Involution::Complementary,
        Involution::Conjugate,
        Involution::Adjoint,
        Involution::Antipodal,
        Involution::Opposite,
    ];

    /// The generator `g'` with `ι(g·f) = g'·ι(f)` for every form `f`.
    pub fn transport(self, g: Generator) -> Generator {
        use Generator::*;
        match self {
            Involution::Opposite => g,
            Involution::Conjugate => match g {
                A => AInv,
                AInv => A,
                B => BInv,
                BInv => B,
                R => R,
            },
            Involution::Adjoint | Involution::Complementary => match g {
                A => BInv,
                BInv => A,
                B => AInv,
                AInv => B,
                R => R,
            },
            Involution::Antipodal => match g {
                A => B,
                B => A,
                AInv => BInv,
                BInv => AInv,
                R => R,
            },
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Involution::Complementary => "complementary",
            Involution::Conjugate => "conjugate",
            Involution::Adjoint => "adjoint",
            Involution::Antipodal => "antipodal",
            Involution::Opposite => "opposite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
    R,
    AInv,
    BInv,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::A,
        Generator::B,
        Generator::R,
        Generator::AInv,
        Generator::BInv,
    ];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::A => Generator::AInv,
            Generator::AInv => Generator::A,
            Generator::B => Generator::BInv,
            Generator::BInv => Generator::B,
            Generator::R => Generator::R,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::A => "A",
            Generator::B => "B",
            Generator::R => "R",
            Generator::AInv => "A⁻¹",
            Generator::BInv => "B⁻¹",
        };
        f.write_str(s)
    }
}

/// Run-length encoded sequence of generator powers, stored in application
/// order. Adjacent runs of the same generator are merged, and `R R` cancels
/// since `R²` acts trivially on forms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorWord {
    steps: Vec<(Generator, u64)>,
}

impl GeneratorWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: impl IntoIterator<Item = (Generator, u64)>) -> Self {
        let mut w = Self::new();
        for (g, e) in steps {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, g: Generator, exp: u64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.steps.last_mut() {
            if last.0 == g {
                last.1 += exp;
                if g == Generator::R {
                    last.1 %= 2;
                    if last.1 == 0 {
                        self.steps.pop();
                    }
                }
                return;
            }
            if last.0 == g.inverse() {
                match last.1.cmp(&exp) {
                    Ordering::Greater => last.1 -= exp,
                    Ordering::Equal => {
                        self.steps.pop();
                    }
                    Ordering::Less => {
                        let rest = exp - last.1;
                        self.steps.pop();
                        self.push(g, rest);
                    }
                }
                return;
            }
        }
        let exp = if g == Generator::R { exp % 2 } else { exp };
        if exp > 0 {
            self.steps.push((g, exp));
        }
    }

    pub fn extend(&mut self, other: &GeneratorWord) {
        for &(g, e) in &other.steps {
            self.push(g, e);
        }
    }

    pub fn steps(&self) -> &[(Generator, u64)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of generator applications.
    pub fn len(&self) -> u64 {
        self.steps.iter().map(|s| s.1).sum()
    }

    pub fn exponent_sum(&self, g: Generator) -> u64 {
        self.steps.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord::from_steps(self.steps.iter().rev().map(|&(g, e)| (g.inverse(), e)))
    }

    /// The word `w'` with `ι(w·f) = w'·ι(f)`.
    pub fn transported(&self, which: Involution) -> GeneratorWord {
        GeneratorWord::from_steps(self.steps.iter().map(|&(g, e)| (which.transport(g), e)))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Domains of the cylinder of forms with fixed discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DomainLabel {
    /// `m > 0`, `n < 0`
    H0,
    /// `m < 0`, `n > 0`
    H0R,
    /// `−1 < ξ⁺ < 0`, `ξ⁻ < −1`
    HA,
    /// `ξ⁺ > 1`, `0 < ξ⁻ < 1`; the reduced forms
    HAbar,
    /// `ξ⁺ < −1`, `−1 < ξ⁻ < 0`
    HB,
    /// `0 < ξ⁺ < 1`, `ξ⁻ > 1`
    HBbar,
    /// `mn > 0` with both roots on the same side of `±1` (the remaining
    /// domains of `G_A`, `G_Ā`, `G_B`, `G_B̄`).
    Outer,
    /// `m = 0`, `n = 0`, or a root equal to `±1`.
    Boundary,
}

impl fmt::Display for DomainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainLabel::H0 => "H0",
            DomainLabel::H0R => "H0R",
            DomainLabel::HA => "HA",
            DomainLabel::HAbar => "HAbar",
            DomainLabel::HB => "HB",
            DomainLabel::HBbar => "HBbar",
            DomainLabel::Outer => "outer",
            DomainLabel::Boundary => "boundary",
        };
        f.write_str(s)
    }
}

pub fn domain_of(f: &Form) -> Result<DomainLabel> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if f.m == 0 || f.n == 0 {
        return Ok(DomainLabel::Boundary);
    }
    if f.m > 0 && f.n < 0 {
        return Ok(DomainLabel::H0);
    }
    if f.m < 0 && f.n > 0 {
        return Ok(DomainLabel::H0R);
    }
    let (plus, minus) = f.roots()?;
    for r in [&plus, &minus] {
        if r.cmp_int(1)? == Ordering::Equal || r.cmp_int(-1)? == Ordering::Equal {
            return Ok(DomainLabel::Boundary);
        }
    }
    let between = |r: &Surd, lo: Int, hi: Int| -> Result<bool> {
        Ok(r.cmp_int(lo)? == Ordering::Greater && r.cmp_int(hi)? == Ordering::Less)
    };
    let below = |r: &Surd, c: Int| -> Result<bool> { Ok(r.cmp_int(c)? == Ordering::Less) };
    let above = |r: &Surd, c: Int| -> Result<bool> { Ok(r.cmp_int(c)? == Ordering::Greater) };
    Ok(if between(&plus, -1, 0)? && below(&minus, -1)? {
        DomainLabel::HA
    } else if above(&plus, 1)? && between(&minus, 0, 1)? {
        DomainLabel::HAbar
    } else if below(&plus, -1)? && between(&minus, -1, 0)? {
        DomainLabel::HB
    } else if between(&plus, 0, 1)? && above(&minus, 1)? {
        DomainLabel::HBbar
    } else {
        DomainLabel::Outer
    })
}
