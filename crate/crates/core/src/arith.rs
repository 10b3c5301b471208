//! Exact integer and quadratic-surd arithmetic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Int;

#[inline]
pub(crate) fn add(a: Int, b: Int) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: Int, b: Int) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: Int, b: Int) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn neg(a: Int) -> Result<Int> {
    a.checked_neg().ok_or(Error::Overflow)
}

pub(crate) fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as Int
}

/// `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt(n: Int) -> Result<Int> {
    if n < 0 {
        return Err(Error::domain(format!("isqrt of negative number {n}")));
    }
    Ok(n.isqrt())
}

/// True iff `n` is a non-negative perfect square.
pub fn is_square(n: Int) -> bool {
    if n < 0 {
        return false;
    }
    let r = n.isqrt();
    r * r == n
}

/// The real number `(P + √D) / Q`.
///
/// Values are kept normalized so that `Q | D − P²`, which is the invariant the
/// continued-fraction recurrences rely on. `Q` keeps its sign; floors and
/// ceilings do the sign case analysis instead of folding `Q` into `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    p: Int,
    q: Int,
    d: Int,
}

impl Surd {
    pub fn new(p: Int, q: Int, d: Int) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("surd denominator is zero"));
        }
        if d < 0 {
            return Err(Error::domain(format!("negative radicand {d}")));
        }
        Surd { p, q, d }.normalized()
    }

    /// Rescales `(P, Q, D)` by `|Q|` when `Q ∤ D − P²`. Idempotent.
    fn normalized(self) -> Result<Self> {
        let rem = sub(self.d, mul(self.p, self.p)?)?;
        if rem % self.q == 0 {
            return Ok(self);
        }
        let s = self.q.abs();
        Ok(Surd {
            p: mul(self.p, s)?,
            q: mul(self.q, s)?,
            d: mul(self.d, mul(s, s)?)?,
        })
    }

    pub fn p(&self) -> Int {
        self.p
    }

    pub fn q(&self) -> Int {
        self.q
    }

    pub fn d(&self) -> Int {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        is_square(self.d)
    }

    /// The value as a reduced fraction `(num, den)` with `den > 0`, when rational.
    pub fn as_rational(&self) -> Option<(Int, Int)> {
        if !self.is_rational() {
            return None;
        }
        let num = self.p + self.d.isqrt();
        let (num, den) = if self.q < 0 {
            (-num, -self.q)
        } else {
            (num, self.q)
        };
        let g = gcd(num, den);
        Some((num / g, den / g))
    }

    /// Sign of `value − c`, computed exactly.
    pub fn cmp_int(&self, c: Int) -> Result<Ordering> {
        // value − c = (r + √D)/Q with r = P − cQ
        let r = sub(self.p, mul(c, self.q)?)?;
        let numer = if r >= 0 {
            if r == 0 && self.d == 0 {
                Ordering::Equal
            } else {
                Ordering::Greater
            }
        } else {
            self.d.cmp(&mul(r, r)?)
        };
        Ok(if self.q > 0 { numer } else { numer.reverse() })
    }

    /// Exact value equality (the representations may differ by scaling).
    pub fn same_value(&self, other: &Surd) -> Result<bool> {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => Ok(a == b),
            (None, None) => {
                let a = sub(mul(self.p, other.q)?, mul(other.p, self.q)?)?;
                let lhs = mul(self.d, mul(other.q, other.q)?)?;
                let rhs = mul(other.d, mul(self.q, self.q)?)?;
                Ok(a == 0 && lhs == rhs && (self.q > 0) == (other.q > 0))
            }
            _ => Ok(false),
        }
    }

    /// `value − c` as a surd.
    pub fn sub_int(&self, c: Int) -> Result<Surd> {
        Surd::new(sub(self.p, mul(c, self.q)?)?, self.q, self.d)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/{}", self.p, self.d, self.q)
    }
}

/// `⌊(P+√D)/Q⌋`.
pub fn floor_surd(s: &Surd) -> Result<Int> {
    let root = s.d.isqrt();
    let top = add(s.p, root)?;
    if s.q > 0 {
        return Ok(top.div_euclid(s.q));
    }
    // value = −(P+√D)/|Q|
    let aq = neg(s.q)?;
    if root * root == s.d {
        Ok(-ceil_div(top, aq))
    } else {
        neg(add(top.div_euclid(aq), 1)?)
    }
}

/// `⌈(P+√D)/Q⌉`.
pub fn ceil_surd(s: &Surd) -> Result<Int> {
    let fl = floor_surd(s)?;
    if s.is_rational() && s.cmp_int(fl)? == Ordering::Equal {
        Ok(fl)
    } else {
        add(fl, 1)
    }
}

fn ceil_div(a: Int, b: Int) -> Int {
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Floor by interval evaluation of √D at scale 10¹²; returns `None` when
    /// the interval straddles an integer.
    fn floor_by_interval(p: Int, q: Int, d: Int) -> Option<Int> {
        let scale: Int = 10i128.pow(12);
        let lo_root = (d * scale * scale).isqrt();
        let exact = lo_root * lo_root == d * scale * scale;
        let hi_root = if exact { lo_root } else { lo_root + 1 };
        let (mut a, mut b, mut den) = (p * scale + lo_root, p * scale + hi_root, q * scale);
        if den < 0 {
            (a, b, den) = (-b, -a, -den);
        }
        let (lo_fl, hi_fl) = (a.div_euclid(den), b.div_euclid(den));
        if lo_fl == hi_fl {
            return Some(lo_fl);
        }
        // b lands exactly on an integer boundary only through the open upper end
        (!exact && b.rem_euclid(den) == 0 && hi_fl == lo_fl + 1).then_some(lo_fl)
    }

    #[test]
    fn isqrt_cases() {
        assert_eq!(isqrt(0).unwrap(), 0);
        assert_eq!(isqrt(17).unwrap(), 4);
        assert_eq!(isqrt(1_000_000_000_000).unwrap(), 1_000_000);
        assert!(matches!(isqrt(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn is_square_cases() {
        assert!(is_square(25));
        assert!(!is_square(24));
        assert!(!is_square(-4));
        assert!(is_square(0));
    }

    #[test]
    fn floor_examples() {
        let s = Surd::new(-5, 4, 33).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), 0);
        assert_eq!(floor_by_interval(-5, 4, 33), Some(0));
        let s = Surd::new(3, 4, 17).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), 1);
        let s = Surd::new(7, 2, 0).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), 3);
    }

    #[test]
    fn ceil_examples() {
        assert_eq!(ceil_surd(&Surd::new(7, 4, 17).unwrap()).unwrap(), 3);
        assert_eq!(ceil_surd(&Surd::new(4, 2, 0).unwrap()).unwrap(), 2);
        let s = Surd::new(-5, 4, 33).unwrap();
        assert_eq!(ceil_surd(&s).unwrap(), 1);
        assert_eq!(floor_by_interval(-5, 4, 33).map(|f| f + 1), Some(1));
    }

    #[test]
    fn negative_denominator() {
        // (1+√5)/(−2) ≈ −1.618
        let s = Surd::new(1, -2, 5).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), -2);
        assert_eq!(ceil_surd(&s).unwrap(), -1);
        // (3+√9)/(−4) = −1.5
        let s = Surd::new(3, -4, 9).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), -2);
        assert_eq!(ceil_surd(&s).unwrap(), -1);
        // (5+√9)/(−4) = −2 exactly
        let s = Surd::new(5, -4, 9).unwrap();
        assert_eq!(floor_surd(&s).unwrap(), -2);
        assert_eq!(ceil_surd(&s).unwrap(), -2);
    }

    #[test]
    fn normalization_scales_when_needed() {
        // (1+√3)/2: 3 − 1 = 2 divisible by 2, kept
        let s = Surd::new(1, 2, 3).unwrap();
        assert_eq!((s.p(), s.q(), s.d()), (1, 2, 3));
        // (1+√2)/3: 2 − 1 = 1 not divisible by 3 → (3+√18)/9
        let s = Surd::new(1, 3, 2).unwrap();
        assert_eq!((s.p(), s.q(), s.d()), (3, 9, 18));
        assert!(s.same_value(&Surd { p: 1, q: 3, d: 2 }).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Surd::new(1, 0, 5).is_err());
    }

    #[test]
    fn cmp_int_exact() {
        let phi = Surd::new(1, 2, 5).unwrap();
        assert_eq!(phi.cmp_int(1).unwrap(), Ordering::Greater);
        assert_eq!(phi.cmp_int(2).unwrap(), Ordering::Less);
        let two = Surd::new(1, 2, 9).unwrap();
        assert_eq!(two.cmp_int(2).unwrap(), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in 0i128..1_000_000_000) {
            let r = isqrt(n).unwrap();
            prop_assert!(r * r <= n && n < (r + 1) * (r + 1));
        }

        #[test]
        fn floor_brackets_value(p in -500i128..500, q in -60i128..60, d in 0i128..5000) {
            prop_assume!(q != 0);
            let s = Surd::new(p, q, d).unwrap();
            let fl = floor_surd(&s).unwrap();
            prop_assert_ne!(s.cmp_int(fl).unwrap(), Ordering::Less);
            prop_assert_eq!(s.cmp_int(fl + 1).unwrap(), Ordering::Less);
            if let Some(oracle) = floor_by_interval(p, q, d) {
                prop_assert_eq!(fl, oracle);
            }
            let cl = ceil_surd(&s).unwrap();
            prop_assert!(cl == fl || cl == fl + 1);
            prop_assert_ne!(s.cmp_int(cl).unwrap(), Ordering::Greater);
        }

        #[test]
        fn normalization_idempotent(p in -500i128..500, q in -60i128..60, d in 0i128..5000) {
            prop_assume!(q != 0);
            let s = Surd::new(p, q, d).unwrap();
            let again = Surd::new(s.p(), s.q(), s.d()).unwrap();
            prop_assert_eq!(s, again);
            prop_assert_eq!((s.d() - s.p() * s.p()) % s.q(), 0);
            // the normalized surd is a root of the same quadratic as the input
            let raw = Surd { p, q, d };
            prop_assert!(s.same_value(&raw).unwrap());
        }
    }
}
