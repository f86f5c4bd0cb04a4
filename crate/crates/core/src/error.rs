use thiserror::Error;

/// Failure modes shared by every module.
///
/// The split matters to callers: `TheoremViolation`, `PredictionMismatch` and
/// `Internal` mean a computed result contradicts mathematics that must hold,
/// while the rest describe unusable input or a refused request.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("enumeration cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u64 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("refused by gate: {0}")]
    Gate(String),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("prediction mismatch: {0}")]
    PredictionMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for results that contradict a proven statement or a cross-check.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_) | Error::PredictionMismatch(_) | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
