//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by generators, estimators, and bound evaluators.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A request would exceed a size cap (point budget, representable scale).
    #[error("capacity error: {0}")]
    Capacity(String),

    /// An exponent model was used outside its range of validity.
    #[error("model error: {0}")]
    Model(String),

    /// An internal consistency check failed; this signals a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
