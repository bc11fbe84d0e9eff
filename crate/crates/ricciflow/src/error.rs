use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("singular basis change (|det| = {0:e})")]
    Singular(f64),

    #[error("metric is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("criterion not applicable: {0}")]
    NotApplicable(String),

    #[error("outside maximal existence domain: {0}")]
    Domain(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
