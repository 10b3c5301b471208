//! Symmetry of periods as cyclic words, the five-way classification of
//! classes, and the counts of class representatives per domain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add, sub};
use crate::cf::{self, cf_parity_variant, cf_rational, doubled_period, CfExpansion, Parity};
use crate::error::{Error, Result};
use crate::form::{Form, Generator, GeneratorWord};
use crate::reduction::reduce_to_h0;
use crate::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetryType {
    Asymmetric,
    KSymmetric,
    MPlusNSymmetric,
    Antisymmetric,
    Supersymmetric,
}

impl SymmetryType {
    pub const ALL: [SymmetryType; 5] = [
        SymmetryType::Asymmetric,
        SymmetryType::KSymmetric,
        SymmetryType::MPlusNSymmetric,
        SymmetryType::Antisymmetric,
        SymmetryType::Supersymmetric,
    ];

    /// Abbreviation used in the appendix-style tables.
    pub fn short_label(self) -> &'static str {
        match self {
            SymmetryType::Asymmetric => "asymm",
            SymmetryType::KSymmetric => "k",
            SymmetryType::MPlusNSymmetric => "m+n",
            SymmetryType::Antisymmetric => "anti",
            SymmetryType::Supersymmetric => "super",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SymmetryType::Asymmetric => "asymmetric",
            SymmetryType::KSymmetric => "k-symmetric",
            SymmetryType::MPlusNSymmetric => "m+n-symmetric",
            SymmetryType::Antisymmetric => "antisymmetric",
            SymmetryType::Supersymmetric => "supersymmetric",
        }
    }

    /// The types whose periods are palindromic or odd, for which the two
    /// per-domain counts coincide.
    pub fn is_balanced(self) -> bool {
        matches!(
            self,
            SymmetryType::Supersymmetric
                | SymmetryType::Antisymmetric
                | SymmetryType::MPlusNSymmetric
        )
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SymmetryType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetryType::ALL
            .into_iter()
            .find(|t| t.label() == s || t.short_label() == s)
            .ok_or_else(|| Error::domain(format!("unknown symmetry label {s:?}")))
    }
}

/// Everything reported about one class; mirrors a row of the appendix tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: Form,
    pub delta: Int,
    /// `Γ`, first-occurrence rotation for the representative; empty for square `Δ`.
    pub gamma: Vec<Int>,
    /// Finite continued fraction of `k/m` for square `Δ` (the palindromic
    /// parity variant when one exists); empty otherwise.
    pub cf_k_over_m: Vec<Int>,
    /// `P` for non-square `Δ`, `L` for square `Δ`.
    pub length: usize,
    pub t: Int,
    pub t_up: Int,
    pub t_down: Int,
    pub symmetry: SymmetryType,
    pub primitive: bool,
}

impl ClassReport {
    pub fn is_square(&self) -> bool {
        arith::is_square(self.delta)
    }
}

fn rotate(s: &[Int], r: usize) -> Vec<Int> {
    let mut v = s[r..].to_vec();
    v.extend_from_slice(&s[..r]);
    v
}

/// Lexicographically least rotation.
pub fn canonical_rotation(s: &[Int]) -> Vec<Int> {
    (0..s.len().max(1))
        .map(|r| if s.is_empty() { vec![] } else { rotate(s, r) })
        .min()
        .unwrap_or_default()
}

/// True iff `s` is not a repetition of a shorter block.
pub fn is_primitive_period(s: &[Int]) -> bool {
    let len = s.len();
    if len == 0 {
        return false;
    }
    (1..len)
        .filter(|d| len % d == 0)
        .all(|d| (0..len).any(|i| s[i] != s[i % d]))
}

/// Reflection `i ↦ c − i (mod P)` maps the cyclic word onto itself.
fn has_reflection(s: &[Int], c: usize) -> bool {
    let p = s.len();
    (0..p).all(|i| s[i] == s[(c + p - i % p) % p])
}

/// Some rotation of `s` reads the same backwards.
pub fn is_palindromic_cyclic(s: &[Int]) -> bool {
    let p = s.len();
    if p == 0 {
        return false;
    }
    // rotation starting at r is its own reverse iff s has the reflection c = 2r + p − 1
    (0..p).any(|r| has_reflection(s, (2 * r + p - 1) % p))
}

/// Some rotation of `s` splits into two palindromes of odd length.
pub fn is_bipalindromic(s: &[Int]) -> bool {
    let p = s.len();
    if p == 0 || p % 2 == 1 {
        return false;
    }
    // with p even, the reflections with an even centre fix two positions
    (0..p).step_by(2).any(|c| has_reflection(s, c))
}

/// Symmetry type of a class from its period.
pub fn classify_period(s: &[Int]) -> Result<SymmetryType> {
    if !is_primitive_period(s) {
        return Err(Error::NonPrimitivePeriod(s.to_vec()));
    }
    let odd = s.len() % 2 == 1;
    let pal = is_palindromic_cyclic(s);
    let bip = is_bipalindromic(s);
    Ok(match (pal, bip, odd) {
        (true, true, false) => return Err(Error::AmbiguousSymmetry(s.to_vec())),
        (true, _, true) => SymmetryType::Supersymmetric,
        (true, false, false) => SymmetryType::MPlusNSymmetric,
        (false, true, _) => SymmetryType::KSymmetric,
        (false, false, true) => SymmetryType::Antisymmetric,
        (false, false, false) => SymmetryType::Asymmetric,
    })
}

/// `(t, t↑, t↓)` for a non-square discriminant: with `Π = Γ` or `Γ²`,
/// `t = ΣΠ`, `t↑` sums the odd positions (1-based) and `t↓` the even ones.
pub fn counts_nonsquare(gamma: &[Int]) -> Result<(Int, Int, Int)> {
    if gamma.is_empty() {
        return Err(Error::domain("empty period"));
    }
    let pi = doubled_period(gamma);
    let mut up: Int = 0;
    let mut down: Int = 0;
    for (i, &a) in pi.iter().enumerate() {
        if i % 2 == 0 {
            up = add(up, a)?;
        } else {
            down = add(down, a)?;
        }
    }
    Ok((add(up, down)?, up, down))
}

fn check_square_range(m: Int, k: Int) -> Result<()> {
    if m < 0 || m >= k.abs() {
        return Err(Error::domain(format!(
            "square-discriminant representative needs 0 ≤ m < |k|, got m = {m}, k = {k}"
        )));
    }
    Ok(())
}

/// Canonical, odd and even expansions of `|k|/m`.
fn square_expansions(m: Int, k: Int) -> Result<(CfExpansion, CfExpansion, CfExpansion)> {
    let base = cf_rational(k.abs(), m)?;
    let odd = cf_parity_variant(&base, Parity::Odd)?;
    let even = cf_parity_variant(&base, Parity::Even)?;
    Ok((base, odd, even))
}

fn is_plain_palindrome(s: &[Int]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// `(t, t↑, t↓)` for the class of `(m, 0, k)`, `0 ≤ m < |k|`, from the even
/// continued fraction `[a₁, …, a_L]` of `|k|/m`: `t = Σaᵢ − 1`,
/// `t↑ = Σ_{i odd} aᵢ − 1`, `t↓ = Σ_{i even} aᵢ − 1`.
pub fn counts_square(m: Int, k: Int) -> Result<(Int, Int, Int)> {
    check_square_range(m, k)?;
    if m == 0 {
        return Ok((0, 0, 0));
    }
    let (_, _, even) = square_expansions(m, k)?;
    let (t, up, down) = counts_nonsquare(even.terms())?;
    Ok((sub(t, 1)?, sub(up, 1)?, sub(down, 1)?))
}

pub fn classify_square(m: Int, k: Int) -> Result<SymmetryType> {
    check_square_range(m, k)?;
    let ak = k.abs();
    if m == 0 || (ak % 2 == 0 && m == ak / 2) {
        return Ok(SymmetryType::Supersymmetric);
    }
    let (_, odd, even) = square_expansions(m, k)?;
    Ok(if is_plain_palindrome(even.terms()) {
        SymmetryType::MPlusNSymmetric
    } else if is_plain_palindrome(odd.terms()) {
        SymmetryType::KSymmetric
    } else {
        SymmetryType::Asymmetric
    })
}

/// Expansion of `|k|/m` as printed in the tables: the canonical expansion if
/// it is a palindrome, else the other parity variant if that one is, else the
/// variant ending in 1.
pub fn square_display_cf(m: Int, k: Int) -> Result<Vec<Int>> {
    check_square_range(m, k)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    let (base, odd, even) = square_expansions(m, k)?;
    let other = if odd == base { even } else { odd };
    if is_plain_palindrome(base.terms()) {
        Ok(base.terms().to_vec())
    } else {
        Ok(other.terms().to_vec())
    }
}

/// `ξ⁺` of a square-discriminant form as a reduced fraction, `None` for ∞.
fn rational_plus_root(f: &Form, root: Int) -> Option<(Int, Int)> {
    let (num, den) = if f.m != 0 {
        (root - f.k, 2 * f.m)
    } else if f.k > 0 {
        (-f.n, f.k)
    } else {
        return None;
    };
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = arith::gcd(num, den).max(1);
    Some((num / g, den / g))
}

/// Moves a square-discriminant form to the class representative
/// `(m, 0, √Δ)` with `0 ≤ m < √Δ`, returning it with the word that does so.
pub fn normalize_square(f: &Form) -> Result<(Form, GeneratorWord)> {
    let delta = f.discriminant()?;
    if delta <= 0 || !arith::is_square(delta) {
        return Err(Error::domain(format!("Δ = {delta} is not a positive square")));
    }
    let root = delta.isqrt();
    let mut g = *f;
    let mut word = GeneratorWord::new();
    let mut step = |g: &mut Form, gen: Generator, e: u64| -> Result<()> {
        *g = g.apply_pow(gen, e)?;
        word.push(gen, e);
        Ok(())
    };
    // Euclid on ξ⁺: shift into [0, 1) with A, invert with R, until ξ⁺ = 0.
    for _ in 0..10_000 {
        match rational_plus_root(&g, root) {
            None => step(&mut g, Generator::R, 1)?,
            Some((0, _)) => break,
            Some((num, den)) => {
                let a = num.div_euclid(den);
                if a > 0 {
                    step(&mut g, Generator::A, a as u64)?;
                } else if a < 0 {
                    step(&mut g, Generator::AInv, a.unsigned_abs() as u64)?;
                }
                if num.rem_euclid(den) != 0 {
                    step(&mut g, Generator::R, 1)?;
                }
            }
        }
    }
    if g.n != 0 || g.k != root {
        return Err(Error::Internal(format!(
            "square normalization of {f} stopped at {g}"
        )));
    }
    // B fixes the root 0 and shifts m by k
    let shift = g.m.div_euclid(root);
    if shift > 0 {
        step(&mut g, Generator::BInv, shift as u64)?;
    } else if shift < 0 {
        step(&mut g, Generator::B, shift.unsigned_abs() as u64)?;
    }
    debug_assert!(g.n == 0 && (0..root).contains(&g.m));
    Ok((g, word))
}

/// The period of an `H⁰` form rotated so that its first element counts
/// `B` steps of the `H⁰` cycle (equivalently, so that `ξ⁺ = [0; Γ, Γ, …]`).
pub fn b_phase_period(h: &Form) -> Result<Vec<Int>> {
    if !h.in_h0() {
        return Err(Error::domain(format!("{h} is not in H0")));
    }
    let cf = cf::cf_surd(h)?;
    // digit i of ξ⁺ counts A steps for even i and B steps for odd i
    let n = cf.preperiod.len();
    Ok(if n % 2 == 1 || cf.period.len() % 2 == 1 {
        cf.period
    } else {
        rotate(&cf.period, 1)
    })
}

/// Full report for the class of `f`.
pub fn classify_class(f: &Form) -> Result<ClassReport> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::domain(format!("form {f} is not indefinite (Δ = {delta})")));
    }
    if arith::is_square(delta) {
        let (rep, _) = normalize_square(f)?;
        return square_report(rep.m, rep.k);
    }
    let g = if f.m == 0 { f.apply(Generator::R)? } else { *f };
    let gamma = cf::period_of_class(&g)?;
    let symmetry = classify_period(&gamma)?;
    let (h, _) = h0_member(f)?;
    let (t, t_up, t_down) = counts_nonsquare(&b_phase_period(&h)?)?;
    Ok(ClassReport {
        representative: *f,
        delta,
        length: gamma.len(),
        gamma,
        cf_k_over_m: Vec::new(),
        t,
        t_up,
        t_down,
        symmetry,
        primitive: f.is_primitive(),
    })
}

/// A member of the class of `f` in `H⁰` (`m > 0 > n`), with the word reaching it.
pub fn h0_member(f: &Form) -> Result<(Form, GeneratorWord)> {
    let red = reduce_to_h0(f)?;
    let mut word = red.word;
    let mut h = red.form;
    if !h.in_h0() {
        h = h.apply(Generator::R)?;
        word.push(Generator::R, 1);
    }
    if !h.in_h0() {
        return Err(Error::Internal(format!("no H0 member reached from {f}")));
    }
    Ok((h, word))
}

/// Report for the square-discriminant class of `(m, 0, k)`.
pub fn square_report(m: Int, k: Int) -> Result<ClassReport> {
    let symmetry = classify_square(m, k)?;
    let (t, t_up, t_down) = counts_square(m, k)?;
    let cf_k_over_m = square_display_cf(m, k)?;
    let rep = Form::new(m, 0, k);
    Ok(ClassReport {
        representative: rep,
        delta: k * k,
        gamma: Vec::new(),
        length: cf_k_over_m.len(),
        cf_k_over_m,
        t,
        t_up,
        t_down,
        symmetry,
        primitive: rep.is_primitive(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Definition-level palindrome test: try every rotation.
    fn naive_palindromic(s: &[Int]) -> bool {
        (0..s.len()).any(|r| {
            let t = rotate(s, r);
            is_plain_palindrome(&t)
        })
    }

    /// Definition-level bipalindrome test: every rotation, every odd split.
    fn naive_bipalindromic(s: &[Int]) -> bool {
        let p = s.len();
        p % 2 == 0
            && (0..p).any(|r| {
                let t = rotate(s, r);
                (1..p)
                    .step_by(2)
                    .any(|i| is_plain_palindrome(&t[..i]) && is_plain_palindrome(&t[i..]))
            })
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(canonical_rotation(&[3, 1, 1]), vec![1, 1, 3]);
        assert_eq!(canonical_rotation(&[1]), vec![1]);
        assert_eq!(canonical_rotation(&[2, 1, 4]), vec![1, 4, 2]);
    }

    #[test]
    fn primitive_period_examples() {
        assert!(!is_primitive_period(&[1, 2, 3, 1, 2, 3]));
        assert!(is_primitive_period(&[1, 1, 3]));
        assert!(is_primitive_period(&[2]));
        assert!(!is_primitive_period(&[2, 2]));
    }

    #[test]
    fn palindrome_examples() {
        assert!(is_palindromic_cyclic(&[1, 1, 2, 2]));
        assert!(!is_palindromic_cyclic(&[1, 2, 3, 4]));
        assert!(is_palindromic_cyclic(&[5]));
        // [a,a,b,a,a] and [a,b,a,c,c]
        assert!(is_palindromic_cyclic(&[1, 1, 2, 1, 1]));
        assert!(is_palindromic_cyclic(&[1, 2, 1, 3, 3]));
    }

    #[test]
    fn bipalindrome_examples() {
        assert!(is_bipalindromic(&[1, 2, 3, 2, 1, 4]));
        assert!(is_bipalindromic(&[1, 1, 1, 2]));
        assert!(!is_bipalindromic(&[1, 2, 3, 4]));
        assert!(is_bipalindromic(&[2, 7]));
        assert!(!is_bipalindromic(&[1, 2, 1]));
    }

    #[test]
    fn classify_period_examples() {
        assert_eq!(classify_period(&[3, 1, 1]).unwrap(), SymmetryType::Supersymmetric);
        assert_eq!(classify_period(&[5, 2, 1, 2]).unwrap(), SymmetryType::KSymmetric);
        assert_eq!(classify_period(&[1, 1, 2, 2]).unwrap(), SymmetryType::MPlusNSymmetric);
        assert_eq!(classify_period(&[2, 1, 4]).unwrap(), SymmetryType::Antisymmetric);
        assert_eq!(classify_period(&[1, 2, 3, 4]).unwrap(), SymmetryType::Asymmetric);
        assert_eq!(
            classify_period(&[1, 2, 1, 2]),
            Err(Error::NonPrimitivePeriod(vec![1, 2, 1, 2]))
        );
    }

    #[test]
    fn counts_nonsquare_examples() {
        assert_eq!(counts_nonsquare(&[5, 2, 1, 2]).unwrap(), (10, 6, 4));
        assert_eq!(counts_nonsquare(&[1, 1, 3]).unwrap(), (10, 5, 5));
        assert_eq!(counts_nonsquare(&[2, 1]).unwrap(), (3, 2, 1));
    }

    #[test]
    fn counts_square_examples() {
        assert_eq!(counts_square(2, 5).unwrap(), (3, 1, 1));
        assert_eq!(counts_square(2, 7).unwrap(), (4, 2, 1));
        assert_eq!(counts_square(1, 3).unwrap(), (2, 1, 0));
        assert_eq!(counts_square(0, 7).unwrap(), (0, 0, 0));
        assert!(counts_square(7, 7).is_err());
        assert!(counts_square(-1, 7).is_err());
    }

    #[test]
    fn classify_square_examples() {
        assert_eq!(classify_square(0, 7).unwrap(), SymmetryType::Supersymmetric);
        assert_eq!(classify_square(3, 10).unwrap(), SymmetryType::MPlusNSymmetric);
        assert_eq!(classify_square(2, 9).unwrap(), SymmetryType::Asymmetric);
        assert_eq!(classify_square(3, 6).unwrap(), SymmetryType::Supersymmetric);
        assert_eq!(classify_square(1, 3).unwrap(), SymmetryType::KSymmetric);
        assert_eq!(classify_square(2, -5).unwrap(), SymmetryType::MPlusNSymmetric);
        assert!(classify_square(9, 9).is_err());
    }

    #[test]
    fn square_display_examples() {
        assert_eq!(square_display_cf(2, 7).unwrap(), vec![3, 1, 1]);
        assert_eq!(square_display_cf(1, 3).unwrap(), vec![3]);
        assert_eq!(square_display_cf(2, 3).unwrap(), vec![1, 1, 1]);
        assert_eq!(square_display_cf(3, 5).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(square_display_cf(2, 4).unwrap(), vec![2]);
        assert_eq!(square_display_cf(5, 8).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(square_display_cf(0, 8).unwrap(), Vec::<Int>::new());
    }

    #[test]
    fn classify_class_examples() {
        let r = classify_class(&Form::new(5, -7, 9)).unwrap();
        assert_eq!(r.gamma, vec![1, 1, 2, 2]);
        assert_eq!(r.symmetry, SymmetryType::MPlusNSymmetric);
        assert_eq!(r.delta, 221);

        let r = classify_class(&Form::new(2, 0, 5)).unwrap();
        assert_eq!(r.symmetry, SymmetryType::MPlusNSymmetric);
        assert_eq!(r.t, 3);

        let r = classify_class(&Form::new(2, -2, 2)).unwrap();
        assert_eq!(r.gamma, vec![1]);
        assert_eq!(r.symmetry, SymmetryType::Supersymmetric);
        assert!(!r.primitive);

        let r = classify_class(&Form::new(2, -1, 2)).unwrap();
        assert_eq!((r.t, r.t_up, r.t_down), (3, 2, 1));
        let r = classify_class(&Form::new(1, -2, 2)).unwrap();
        assert_eq!((r.t, r.t_up, r.t_down), (3, 1, 2));

        assert!(classify_class(&Form::new(1, 1, 1)).is_err());
    }

    #[test]
    fn normalize_square_examples() {
        let (g, w) = normalize_square(&Form::new(0, 1, 3)).unwrap();
        assert_eq!(g, Form::new(1, 0, 3));
        assert_eq!(Form::new(0, 1, 3).apply_word(&w).unwrap(), g);
        let (g, w) = normalize_square(&Form::new(2, 0, 5)).unwrap();
        assert_eq!(g, Form::new(2, 0, 5));
        assert!(w.is_empty());
        let (g, _) = normalize_square(&Form::new(0, 0, -4)).unwrap();
        assert_eq!(g, Form::new(0, 0, 4));
        assert!(normalize_square(&Form::new(1, -1, 1)).is_err());
    }

    fn arb_word() -> impl Strategy<Value = Vec<Int>> {
        prop::collection::vec(1i128..5, 1..9)
    }

    proptest! {
        #[test]
        fn fast_predicates_match_definitions(s in arb_word()) {
            prop_assert_eq!(is_palindromic_cyclic(&s), naive_palindromic(&s));
            prop_assert_eq!(is_bipalindromic(&s), naive_bipalindromic(&s));
        }

        #[test]
        fn classification_is_rotation_invariant(s in arb_word(), r in 0usize..8) {
            prop_assume!(is_primitive_period(&s));
            let r = r % s.len();
            prop_assert_eq!(classify_period(&s).unwrap(), classify_period(&rotate(&s, r)).unwrap());
        }

        #[test]
        fn canonical_rotation_idempotent(s in arb_word()) {
            let c = canonical_rotation(&s);
            prop_assert_eq!(canonical_rotation(&c), c.clone());
        }

        #[test]
        fn primitive_words_are_never_ambiguous(s in arb_word()) {
            prop_assume!(is_primitive_period(&s));
            prop_assert!(classify_period(&s).is_ok());
        }

        #[test]
        fn normalize_square_recovers_representative(
            k in 1i128..30,
            m_seed in 0i128..1000,
            gens in prop::collection::vec(0usize..5, 0..12),
        ) {
            let rep = Form::new(m_seed % k, 0, k);
            let mut g = rep;
            for i in gens {
                g = g.apply(Generator::ALL[i]).unwrap();
            }
            let (found, word) = normalize_square(&g).unwrap();
            prop_assert_eq!(g.apply_word(&word).unwrap(), found);
            prop_assert_eq!(found, rep);
        }
    }
}
