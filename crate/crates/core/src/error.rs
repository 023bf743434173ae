use thiserror::Error;

/// Errors raised by the computational engines.
///
/// Everything except [`Error::Internal`] is a validation failure on the
/// caller's input. `Internal` means an engine produced data that violates
/// its own postcondition and is always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("elements are not composable: source {source_point} != range {range_point}")]
    NotComposable { source_point: String, range_point: String },

    #[error("degenerate endomorphism: {0}")]
    Degenerate(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True when the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
