use thiserror::Error;

use crate::axioms::PropertyReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration would exceed one of the configured size caps.
    #[error("{what}: size {size} exceeds cap {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("validation error: {0}")]
    Validation(String),

    /// Raised when a threshold representation is requested for a filter that
    /// is not independent of others. The report carries the IO witness.
    #[error("filter admits no threshold representation: {}", .0.summary())]
    RepresentationImpossible(Box<PropertyReport>),

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, size: usize, cap: usize) -> Self {
        Error::Capacity { what, size, cap }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::DomainMismatch(msg.into())
    }
}
