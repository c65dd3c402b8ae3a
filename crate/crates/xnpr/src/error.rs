//! Crate-wide error type.
//!
//! All fallible operations return [`Result`]. Errors are domain errors
//! (valuation of zero, singular matrix, …) or argument errors (modulus
//! mismatch, label out of range, …); nothing here is recoverable state.

use thiserror::Error;

/// Errors produced by the exact-arithmetic kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// p-adic valuation of zero requested (it would be +∞).
    #[error("valuation of zero is undefined")]
    ZeroValuation,

    /// An argument was required to be a prime and is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Two cyclotomic elements from different rings were combined.
    #[error("cyclotomic modulus mismatch: {left} vs {right}")]
    ModulusMismatch {
        /// Modulus of the left operand.
        left: u64,
        /// Modulus of the right operand.
        right: u64,
    },

    /// Inversion (or division by) zero in an exact ring.
    #[error("division by zero")]
    DivisionByZero,

    /// A matrix that must be invertible is singular.
    #[error("matrix is singular")]
    SingularMatrix,

    /// The pivot entry required by a minor-removal inverse vanishes.
    #[error("pivot entry m[t][s] is zero; minor-removal formula does not apply")]
    PivotVanishes,

    /// The 1×1 (or k×k) capacitance of a low-rank update is singular.
    #[error("low-rank update is singular: {0}")]
    RankUpdateSingular(String),

    /// A quantity expected to collapse to a rational kept a ζ component.
    #[error("result is not rational: residual cyclotomic component")]
    NonRationalResult,

    /// Matrix/vector dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An index is outside its documented range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A component label does not exist for the given (p, r).
    #[error("invalid component label: {0}")]
    InvalidLabel(String),

    /// Parameters violate a precondition (p prime, p ∤ N, N ≥ 3, r ≥ 1, …).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// No Klein-form certificate is constructed for this level.
    #[error("no construction known for p^r = {0}")]
    NoConstructionKnown(u64),

    /// The family-search enumeration would exceed its hard cap.
    #[error("search space cap exceeded: {0}")]
    SearchSpaceExceeded(String),

    /// Failed to parse a textual representation (rational, family, label, …).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
