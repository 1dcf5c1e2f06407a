//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: dimension mismatch, expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("{context}: relation has a nontrivial multivalued part, not an operator")]
    NotAnOperator { context: &'static str },
    #[error("{context}: operator is not everywhere defined")]
    NotEverywhereDefined { context: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("t = {t} is not in the resolvent set")]
    NotInResolventSet { t: f64 },
    #[error("vector lies outside the operator domain (residual {residual:.3e})")]
    OutsideDomain { residual: f64 },
    #[error("generator produced no acceptable instance after {attempts} attempts")]
    DegenerateGeneration { attempts: usize },
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("unknown criterion id `{0}`")]
    UnknownCriterion(String),
    #[error("invalid problem file: {0}")]
    InvalidProblem(String),
    #[error("singular value decomposition did not converge")]
    SvdNonConvergence,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
