use thiserror::Error;

use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("domain error: {0}")]
    Domain(String),
    /// The discriminant is a perfect square, so the roots are rational and the
    /// caller must take the square-discriminant path.
    #[error("discriminant {0} is a perfect square; roots are rational")]
    SquareDiscriminant(Int),
    /// `m = 0`: the caller should replace the form by its image under `R`.
    #[error("leading coefficient m is zero; apply R first")]
    ZeroLeadingCoefficient,
    #[error("sequence {0:?} is a repetition of a shorter block")]
    NonPrimitivePeriod(Vec<Int>),
    #[error("period {0:?} is both even-palindromic and bipalindromic")]
    AmbiguousSymmetry(Vec<Int>),
    #[error("orbit search inconclusive with coefficient bound {0}")]
    Inconclusive(Int),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
