use crate::lie::LieError;
use crate::linalg::LinalgError;

/// Failures of the verification suites built on top of the algebra layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    /// A claimed identity does not hold; `witness` describes a vector or index set exhibiting it.
    #[error("claim `{claim}` fails: {witness}")]
    Violation { claim: String, witness: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Bad configuration or command-line input.
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(claim: &str, witness: impl Into<String>) -> Error {
    Error::Violation { claim: claim.to_string(), witness: witness.into() }
}
