//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zeta has a pole at s = 1")]
    PoleAt1,
    #[error("precision unreachable in {what}: error estimate {achieved:e} exceeds tolerance {target:e}")]
    PrecisionUnreachable { what: String, achieved: f64, target: f64 },
    #[error("point {point} is outside the convergence domain ({condition})")]
    OutOfDomain { point: String, condition: String },
    #[error("point lies on the singular hyperplane {hyperplane}")]
    OnSingularHyperplane { hyperplane: String },
    #[error("contour region condition violated: {condition}")]
    RegionViolation { condition: String },
    #[error("target term does not occur in the product")]
    TargetAbsent,
    #[error("target term occurs more than once in the product")]
    TargetAmbiguous,
    #[error("coordinate {index} of the center is {value}, expected a positive integer")]
    NotPositive { index: usize, value: i64 },
    #[error("requested order {requested} exceeds the order cap {cap}")]
    OrderCapExceeded { requested: usize, cap: usize },
    #[error("invalid approach: {reason}")]
    InvalidApproach { reason: String },
    #[error("center {center} is not covered by the available formulas")]
    UnsupportedCenter { center: String },
    #[error("consistency check failed: {detail}")]
    ConsistencyFailure { detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precision(what: impl Into<String>, achieved: f64, target: f64) -> Error {
        Error::PrecisionUnreachable { what: what.into(), achieved, target }
    }
}
