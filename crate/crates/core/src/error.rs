use thiserror::Error;

/// Errors surfaced by evaluation, scanning and certificate construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (n = 0, reversed range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was called on an anchor that does not satisfy its
    /// sign precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Certificate construction discovered an inconsistency.
    #[error("certification failure: {0}")]
    Certification(String),

    /// A serialized certificate could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
