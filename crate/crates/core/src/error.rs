//! Error types for input validation and domain preconditions.

use thiserror::Error;

/// Errors raised by constructors and bound computations.
///
/// Variants split into two classes: malformed inputs (lengths, NaN,
/// nonpositive weights, mismatched spaces) and domain violations
/// (exponent ranges, zero functions, non-probability spaces). Callers
/// that map errors to process exit codes should treat both as input
/// errors; a bound that *fails* is never an `Error`, it is reported in
/// the corresponding record.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("measure space must contain at least one atom")]
    EmptySpace,
    #[error("weight {value} at atom {index} is not strictly positive and finite")]
    BadWeight { index: usize, value: f64 },
    #[error("function has {got} values but the space has {expected} atoms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite value at atom {index}")]
    NonFiniteValue { index: usize },
    #[error("functions live on different measure spaces")]
    SpaceMismatch,
    #[error("operation requires a probability space; total mass is {total_mass}")]
    NotProbabilitySpace { total_mass: f64 },
    #[error("operation requires at least two atoms")]
    TooFewAtoms,
    #[error("exponent p = {p} is outside {range}")]
    BadExponent { p: f64, range: &'static str },
    #[error("exponents violate the relation {relation} (residual {residual:e})")]
    ExponentRelation {
        relation: &'static str,
        residual: f64,
    },
    #[error("the zero function is not allowed here")]
    ZeroFunction,
    #[error("value at atom {index} must be strictly positive")]
    NotStrictlyPositive { index: usize },
    #[error("value at atom {index} must be nonnegative")]
    NegativeValue { index: usize },
    #[error("f + h vanishes identically; the normalized angle is undefined")]
    DegenerateSum,
    #[error("unsupported case: {0}")]
    UnsupportedCase(&'static str),
    #[error("function must have unit norm; got {norm}")]
    NotUnitNorm { norm: f64 },
    #[error("the cancellation hypothesis does not hold at t = {t}")]
    HypothesisNotMet { t: f64 },
    #[error("parameter {name} = {value} is outside {range}")]
    BadParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
