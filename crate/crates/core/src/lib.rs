//! Exact classification of classes of indefinite binary quadratic forms
//! `mx² + ny² + kxy` by the symmetry of the periodic continued fraction of
//! their first root.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: integer square roots and exact quadratic surds `(P+√D)/Q`.
//! * [`form`]: forms, involutions, the `A`, `B`, `R` generator action and
//!   the domains of the form space.
//! * [`cf`]: regular and modular continued fractions, periods, and the
//!   reconstruction of forms from a period.
//! * [`period`]: cyclic-word symmetry predicates, the five-way classifier
//!   and the representative counts.
//! * [`reduction`]: reduction to `H⁰`, reduced-form cycles and the modular
//!   sum rule.
//! * [`oracle`]: brute-force orbit search used to cross-check the fast path.
//! * [`census`] and [`report`]: per-discriminant class enumeration, tables,
//!   statistics and their md/csv/json rendering.
//!
//! All arithmetic is on checked `i128`. Floating point appears only in the
//! decimal fractions of the statistics output.

pub mod arith;
pub mod census;
pub mod cf;
pub mod error;
pub mod form;
pub mod oracle;
pub mod period;
pub mod reduction;
pub mod report;

/// Integer type used for every coefficient and continued-fraction digit.
pub type Int = i128;

pub use arith::{ceil_surd, floor_surd, is_square, isqrt, Surd};
pub use cf::{CfExpansion, ModularCf};
pub use error::{Error, Result};
pub use form::{DomainLabel, Form, Generator, GeneratorWord, Involution};
pub use period::{ClassReport, SymmetryType};
pub use reduction::ReducedCycle;
