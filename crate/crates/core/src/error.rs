use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain where a formula or enumeration is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-asserted hypothesis produced an impossible quantity.
    #[error("inconsistent hypotheses: {0}")]
    InconsistentHypotheses(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
