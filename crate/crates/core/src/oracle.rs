//! Brute-force cross-checks: orbit search under the generators with a
//! coefficient bound, the `H⁰` cycle walk, and symmetry and domain counts
//! read directly off the orbit.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::{self, mul};
use crate::cf;
use crate::error::{Error, Result};
use crate::form::{DomainLabel, Form, Generator, GeneratorWord, Involution};
use crate::period::SymmetryType;
use crate::reduction::h0_step;
use crate::Int;

/// Every form reachable from `f` by `A`, `B`, `R`, `A⁻¹`, `B⁻¹` without a
/// coefficient exceeding `coeff_bound` in absolute value, in breadth-first
/// order.
pub fn orbit_bfs(f: &Form, coeff_bound: Int) -> Result<Vec<Form>> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if coeff_bound <= 0 {
        return Err(Error::domain("coefficient bound must be positive"));
    }
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(*f);
    queue.push_back(*f);
    while let Some(g) = queue.pop_front() {
        order.push(g);
        for gen in Generator::ALL {
            let h = match g.apply(gen) {
                Ok(h) => h,
                Err(Error::Overflow) => continue,
                Err(e) => return Err(e),
            };
            if h.max_abs() <= coeff_bound && seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// The cycle of `f` in `H⁰` under the walk that applies `A` when `ξ⁺ > 1`
/// and `B` otherwise, together with the word `T` with `T·f = f`.
pub fn h0_cycle_walk(f: &Form) -> Result<(Vec<Form>, GeneratorWord)> {
    if !f.in_h0() {
        return Err(Error::domain(format!("{f} is not in H0")));
    }
    let delta = f.discriminant()?;
    if arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    let mut cycle = vec![*f];
    let mut seen: HashSet<Form> = cycle.iter().copied().collect();
    let mut word = GeneratorWord::new();
    let mut g = *f;
    // every H⁰ form has |k| < √Δ and |m|, |n| ≤ Δ/4, which bounds the cycle
    let limit = 2 * delta as usize + 8;
    loop {
        let (gen, next) = h0_step(&g)?;
        word.push(gen, 1);
        if !next.in_h0() {
            return Err(Error::Internal(format!("walk left H0 at {next}")));
        }
        if next == *f {
            break;
        }
        if !seen.insert(next) {
            return Err(Error::Internal(format!("walk from {f} revisited {next}")));
        }
        if cycle.len() > limit {
            return Err(Error::Internal(format!("walk from {f} did not close")));
        }
        cycle.push(next);
        g = next;
    }
    Ok((cycle, word))
}

/// A point of an `H⁰` cycle together with the period read from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalPoint {
    pub form: Form,
    pub gamma: Vec<Int>,
}

/// Points of the `H⁰` cycle of `f` where the walk switches between `A`
/// and `B`, each with the period of its first root.
pub fn principal_points(f: &Form) -> Result<Vec<PrincipalPoint>> {
    let (cycle, _) = h0_cycle_walk(f)?;
    let steps: Vec<Generator> = cycle
        .iter()
        .map(|g| h0_step(g).map(|s| s.0))
        .collect::<Result<_>>()?;
    let t = cycle.len();
    let mut out = Vec::new();
    for i in 0..t {
        let before = steps[(i + t - 1) % t];
        if before != steps[i] {
            out.push(PrincipalPoint {
                form: cycle[i],
                gamma: cf::period_of_class(&cycle[i])?,
            });
        }
    }
    Ok(out)
}

/// Members of a class found by the orbit search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSample {
    pub forms: Vec<Form>,
    pub coeff_bound: Int,
}

impl OrbitSample {
    pub fn h0_members(&self) -> Vec<Form> {
        self.forms.iter().copied().filter(Form::in_h0).collect()
    }
}

pub fn default_bound(delta: Int) -> Int {
    4 * delta
}

/// Orbit search with a closure check, enlarging the bound up to three times
/// when the search is inconclusive.
///
/// For non-square `Δ` the search is conclusive when the `H⁰` members are
/// closed under the walk; for square `Δ`, when a form `(m, 0, √Δ)` with
/// `0 ≤ m < √Δ` was reached.
pub fn closed_orbit(f: &Form, coeff_bound: Int) -> Result<OrbitSample> {
    let delta = f.discriminant()?;
    let mut bound = coeff_bound;
    for _ in 0..4 {
        let forms = orbit_bfs(f, bound)?;
        if is_conclusive(&forms, delta)? {
            return Ok(OrbitSample {
                forms,
                coeff_bound: bound,
            });
        }
        bound = mul(bound, 2)?;
    }
    Err(Error::Inconclusive(bound / 2))
}

fn is_conclusive(forms: &[Form], delta: Int) -> Result<bool> {
    if arith::is_square(delta) {
        let root = delta.isqrt();
        return Ok(forms
            .iter()
            .any(|g| g.n == 0 && g.k == root && (0..root).contains(&g.m)));
    }
    let set: HashSet<&Form> = forms.iter().collect();
    for g in forms.iter().filter(|g| g.in_h0()) {
        if !set.contains(&h0_step(g)?.1) {
            return Ok(false);
        }
    }
    Ok(forms.iter().any(Form::in_h0))
}

/// Symmetry type of the class of `f` read from which involutions map its
/// `H⁰ ∪ H⁰_R` members back into the class (all members found, when the
/// class has none there).
pub fn verify_symmetry(f: &Form, coeff_bound: Int) -> Result<SymmetryType> {
    let sample = closed_orbit(f, coeff_bound)?;
    let mut members: HashSet<Form> = sample
        .forms
        .iter()
        .copied()
        .filter(|g| g.in_h0() || (g.m < 0 && g.n > 0))
        .collect();
    // classes (m, 0, k) with t = 0 never enter H⁰
    if members.is_empty() {
        members = sample.forms.iter().copied().collect();
    }
    let invariant = |i: Involution| members.iter().any(|g| members.contains(&g.involution(i)));
    let conj = invariant(Involution::Conjugate);
    let adj = invariant(Involution::Adjoint);
    let anti = invariant(Involution::Antipodal);
    Ok(match (conj, adj, anti) {
        (true, true, true) => SymmetryType::Supersymmetric,
        (true, false, false) => SymmetryType::KSymmetric,
        (false, true, false) => SymmetryType::MPlusNSymmetric,
        (false, false, true) => SymmetryType::Antisymmetric,
        (false, false, false) => SymmetryType::Asymmetric,
        _ => {
            return Err(Error::Internal(format!(
                "class of {f} has an inconsistent set of symmetries"
            )))
        }
    })
}

/// Orbit members of a class tallied by domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainTally {
    pub coeff_bound: Int,
    pub counts: BTreeMap<DomainLabel, usize>,
}

impl DomainTally {
    pub fn get(&self, d: DomainLabel) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// Number of class members in `H⁰`.
    pub fn t(&self) -> usize {
        self.get(DomainLabel::H0)
    }
}

pub fn verify_counts(f: &Form, coeff_bound: Int) -> Result<DomainTally> {
    let sample = closed_orbit(f, coeff_bound)?;
    let mut counts = BTreeMap::new();
    for g in &sample.forms {
        *counts.entry(g.domain()?).or_insert(0) += 1;
    }
    Ok(DomainTally {
        coeff_bound: sample.coeff_bound,
        counts,
    })
}
