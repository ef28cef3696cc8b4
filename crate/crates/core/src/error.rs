use thiserror::Error;

use crate::tensor::Triple;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid structure tensor: {0}")]
    InvalidTensor(String),

    #[error("malformed tensor description: {0}")]
    Schema(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {0} is not in the support of the structure tensor")]
    OutsideSupport(Triple),

    #[error("non-finite value in numeric evaluation: {0}")]
    NonFinite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
