use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A structural check failed: classification and numerics disagree.
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
