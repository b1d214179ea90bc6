use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The request exceeds a configured search or materialisation budget.
    #[error("capability limit exceeded: {0}")]
    Capability(String),
    /// A strategy's runtime assertion failed. The payload carries a diagnostic dump.
    #[error("strategy invariant violated: {message}")]
    Invariant { message: String, dump: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
