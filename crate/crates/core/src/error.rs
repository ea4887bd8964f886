use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input has the wrong shape: out-of-grid coordinates, wrong subset
    /// sizes, a non-permutation, mismatched ambient dimensions.
    #[error("malformed input: {0}")]
    Structural(String),

    /// Input is well formed but violates a precondition of the operation.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Parameters outside the supported range (field size, ambient
    /// dimension, enumeration budget).
    #[error("out of range: {0}")]
    Range(String),

    /// A computed object failed a property that holds by construction.
    /// Seeing this means there is a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
