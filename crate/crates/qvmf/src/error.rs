use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a monomial in u: {0}")]
    NotAMonomial(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("bad weight {0}")]
    BadWeight(i64),
    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: String },
    #[error("series is not the expansion of a weight-{0} quasi-modular form")]
    NotQuasiModular(u32),
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("irrational eigenvalues at weight {weight}; characteristic polynomial {char_poly}")]
    IrrationalEigenvalues { weight: u32, char_poly: String },
    #[error("input contains E2")]
    HasE2,
    #[error("input is not annihilated by the lowering operator")]
    NotModular,
    #[error("pole at tau = {0}")]
    PoleAtTau(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix entries admit no consistent u-grading")]
    NotGraded,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
