//! Reduction theory: moving a form into `H⁰`, the cycle of reduced forms of
//! a class, classical reduction by `R·Aᵇ` words and the modular sum rule.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, mul};
use crate::cf::{self, cf_period_to_modular_period};
use crate::error::{Error, Result};
use crate::form::{Form, Generator, GeneratorWord, Involution};
use crate::period::{self, SymmetryType};
use crate::Int;

/// The reduced forms of a class in cycle order, with the modular period
/// `(c₁, …, c_t)` such that `R·A^{cᵢ}` maps the `i`-th form to the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCycle {
    pub forms: Vec<Form>,
    pub modular_period: Vec<Int>,
}

impl ReducedCycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn modular_sum(&self) -> Result<Int> {
        self.modular_period.iter().try_fold(0, |s, &c| add(s, c))
    }
}

/// Result of [`reduce_to_h0`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Reduction {
    /// A form of the class with `m′n′ ≤ 0`.
    pub form: Form,
    /// Word taking the input to `form`.
    pub word: GeneratorWord,
    /// Involution used to make the first root positive; `None` for the identity.
    pub involution: Option<Involution>,
}

/// `m > 0`, `n > 0`, `k < 0`, `m + n < |k|`.
pub fn is_reduced(f: &Form) -> bool {
    f.m > 0 && f.n > 0 && f.k < 0 && f.m + f.n < -f.k
}

const WALK_LIMIT: usize = 1 << 22;

fn positive_plus_root(f: &Form) -> Result<bool> {
    Ok(f.plus_root()?.cmp_int(0)? == Ordering::Greater)
}

/// Moves `f` to a form with `m′n′ ≤ 0` in its class.
///
/// Forms with `mn > 0` are first mapped by an involution (tried in the order
/// identity, conjugate, adjoint, antipodal) to one with `ξ⁺ > 0`; then
/// `A` is applied while `ξ⁺ > 1` and `B` while `0 < ξ⁺ < 1`, which follows the
/// continued fraction of `ξ⁺` until `m′n′ ≤ 0`. The involution is undone at
/// the end and the word is transported accordingly.
pub fn reduce_to_h0(f: &Form) -> Result<H0Reduction> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if mul(f.m, f.n)? <= 0 {
        return Ok(H0Reduction {
            form: *f,
            word: GeneratorWord::new(),
            involution: None,
        });
    }
    let candidates = [
        None,
        Some(Involution::Conjugate),
        Some(Involution::Adjoint),
        Some(Involution::Antipodal),
    ];
    let mut chosen = None;
    for c in candidates {
        let g = c.map_or(*f, |i| f.involution(i));
        if positive_plus_root(&g)? {
            chosen = Some((c, g));
            break;
        }
    }
    let (involution, mut g) =
        chosen.ok_or_else(|| Error::Internal(format!("no involution gives {f} a positive root")))?;

    let mut word = GeneratorWord::new();
    let mut steps = 0usize;
    while mul(g.m, g.n)? > 0 {
        steps += 1;
        if steps > WALK_LIMIT {
            return Err(Error::Internal(format!("reduction of {f} did not terminate")));
        }
        let gen = if g.plus_root()?.cmp_int(1)? == Ordering::Greater {
            Generator::A
        } else {
            Generator::B
        };
        g = g.apply(gen)?;
        word.push(gen, 1);
    }
    let (form, word) = match involution {
        None => (g, word),
        Some(i) => (g.involution(i), word.transported(i)),
    };
    Ok(H0Reduction {
        form,
        word,
        involution,
    })
}

fn require_nonsquare(f: &Form) -> Result<Int> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    Ok(delta)
}

/// One step of the `H⁰` cycle: `A` when `ξ⁺ > 1`, otherwise `B`.
pub(crate) fn h0_step(g: &Form) -> Result<(Generator, Form)> {
    // for m > 0 > n, ξ⁺ > 1 iff the form is negative at (1, 1)
    let gen = if add(add(g.m, g.n)?, g.k)? < 0 {
        Generator::A
    } else {
        Generator::B
    };
    Ok((gen, g.apply(gen)?))
}

/// A reduced form of the class of `f`, reached through `H⁰` and a final `A⁻¹`.
pub fn reduced_member(f: &Form) -> Result<Form> {
    require_nonsquare(f)?;
    let (start, _) = period::h0_member(f)?;
    let mut g = start;
    loop {
        let h = g.apply(Generator::AInv)?;
        if is_reduced(&h) {
            return Ok(h);
        }
        g = h0_step(&g)?.1;
        if g == start {
            return Err(Error::Internal(format!("no reduced form found from {f}")));
        }
    }
}

/// All reduced forms of the class of `f` and the modular period attached to
/// `ξ⁺`, obtained by iterating `h ↦ R·A^c·h` with `c` the first power of `A`
/// that takes `h` out of `H⁰`.
pub fn reduced_cycle(f: &Form) -> Result<ReducedCycle> {
    require_nonsquare(f)?;
    let start = reduced_member(f)?;
    let (t, _, _) = period::counts_nonsquare(&cf::period_of_class(&start)?)?;
    let bound = 4 * t as usize + 16;
    let mut forms = Vec::new();
    let mut modular_period = Vec::new();
    let mut h = start;
    loop {
        forms.push(h);
        let mut g = h.apply(Generator::A)?;
        let mut c: Int = 1;
        while g.in_h0() {
            g = g.apply(Generator::A)?;
            c += 1;
        }
        modular_period.push(c);
        h = g.apply(Generator::R)?;
        if !is_reduced(&h) {
            return Err(Error::Internal(format!("{h} reached from {start} is not reduced")));
        }
        if h == start {
            break;
        }
        if forms.len() > bound {
            return Err(Error::Internal(format!(
                "reduced cycle of {start} did not close within {bound} steps"
            )));
        }
    }
    Ok(ReducedCycle {
        forms,
        modular_period,
    })
}

/// The reduced cycle of the conjugate class, whose modular period is the
/// other one of an asymmetric class.
pub fn reduced_cycle_conjugate(f: &Form) -> Result<ReducedCycle> {
    reduced_cycle(&f.involution(Involution::Conjugate))
}

/// Modular period predicted from `Γ` through the regular-to-modular conversion.
pub fn modular_period_from_gamma(f: &Form) -> Result<Vec<Int>> {
    let h = reduced_member(f)?;
    // ξ⁺(h) − 1 has a purely periodic expansion starting with the A-run
    let cf = cf::cf_surd(&h.apply(Generator::A)?)?;
    let pi = cf::doubled_period(&cf.period);
    let pi = if cf.preperiod.len() % 2 == 0 || cf.period.len() % 2 == 1 {
        pi
    } else {
        let mut r = pi[1..].to_vec();
        r.push(pi[0]);
        r
    };
    cf_period_to_modular_period(&pi)
}

/// Classical reduction of a form with `m > 0`, `n > 0`, `k < 0`: applies
/// `R·A^{bᵢ}` for each preperiod digit `bᵢ` of the modular continued fraction
/// of `ξ⁺`.
pub fn reduce_classical(f: &Form) -> Result<(Form, GeneratorWord)> {
    if !(f.m > 0 && f.n > 0 && f.k < 0) {
        return Err(Error::domain(format!("{f} does not satisfy m > 0, n > 0, k < 0")));
    }
    require_nonsquare(f)?;
    let mcf = cf::modular_cf_surd(f)?;
    let mut g = *f;
    let mut word = GeneratorWord::new();
    for &b in &mcf.preperiod {
        let b = u64::try_from(b).map_err(|_| Error::Internal(format!("digit {b} below 1")))?;
        g = g.apply_pow(Generator::A, b)?.apply(Generator::R)?;
        word.push(Generator::A, b);
        word.push(Generator::R, 1);
    }
    if !is_reduced(&g) {
        return Err(Error::Internal(format!("classical reduction of {f} ended at {g}")));
    }
    Ok((g, word))
}

/// Outcome of checking `Σcᵢ = 3t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumRule {
    Holds,
    Violated,
    /// The rule is only claimed for supersymmetric, antisymmetric and
    /// `m+n`-symmetric classes.
    NotApplicable,
}

impl SumRule {
    pub fn passed(self) -> bool {
        self != SumRule::Violated
    }
}

pub fn check_sum_rule(cycle: &ReducedCycle, symmetry: SymmetryType) -> Result<SumRule> {
    if !symmetry.is_balanced() {
        return Ok(SumRule::NotApplicable);
    }
    let t = cycle.modular_period.len() as Int;
    Ok(if cycle.modular_sum()? == 3 * t {
        SumRule::Holds
    } else {
        SumRule::Violated
    })
}

/// Distinct forms in a cycle; used to check that no reduced form recurs.
pub fn all_distinct(forms: &[Form]) -> bool {
    let set: HashSet<&Form> = forms.iter().collect();
    set.len() == forms.len()
}
