//! Exact scalar arithmetic: rationals, truncated series in `ε`, and
//! two-parameter series in `(ε, h)`.

mod bi;
mod eps;
pub mod rational;

use std::fmt;

use thiserror::Error;

pub use bi::BiSeries;
pub use eps::EpsSeries;
pub use rational::{format_rational, parse_rational, Rational};

/// Default truncation order for series built from configuration.
pub const DEFAULT_ORDER: i32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ ({left} vs {right})")]
    TruncationMismatch { left: i32, right: i32 },
    #[error("exponent {exponent} is below the permitted Laurent floor {floor}")]
    LaurentUnderflow { exponent: i32, floor: i32 },
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("square root needs an even leading exponent, found {0}")]
    OddLeadingExponent(i32),
    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeading(Rational),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Scalar ring used for the coefficients of algebra elements.
///
/// Values carry their own truncation settings, so constants are always
/// produced from an existing value (`*_like`).
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn rational_like(&self, r: Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    /// `ε ↦ −ε`; any second parameter is left alone.
    fn flip_eps(&self) -> Self;
    /// The part of `ε`-degree `k`, with the `ε^k` factor removed.
    fn eps_coefficient(&self, k: i32) -> Self;
    /// Lowest `ε`-degree present.
    fn eps_valuation(&self) -> Option<i32>;
    /// Value with every parameter set to zero.
    fn constant_term(&self) -> Rational;

    fn one_like(&self) -> Self {
        self.rational_like(num_traits::One::one())
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}
