use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("operation `{0}` is undefined on 0-forms")]
    DegreeZero(&'static str),
    #[error("metric is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("metric is not positive definite: leading minor of order {order} is {value}")]
    NotPositiveDefinite { order: usize, value: Rational },
    #[error("metric is not the identity in the given basis")]
    NotOrthonormal,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    /// 0-based index of the first basis 1-form with `d(de^i) ≠ 0`.
    #[error("Jacobi identity fails: d(d e{}) != 0", .0 + 1)]
    Jacobi(usize),
    #[error("invalid almost contact metric structure: {0}")]
    InvalidStructure(String),
    #[error("invalid Hermitian structure: {0}")]
    InvalidHermitian(String),
    #[error("structure is not ST: {0}")]
    NotSt(String),
    #[error("almost complex structure is not integrable")]
    NotIntegrable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Lee form formulas disagree: {0}")]
    LeeInconsistency(String),
    #[error("inconsistent phi table: {0}")]
    InconsistentPhi(String),
    #[error("internal cross-check failed: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
