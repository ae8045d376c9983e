use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A value that should satisfy a physical invariant does not.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// The dense oracle refuses lattices above its size cap.
    #[error("lattice of {l} sites exceeds the oracle cap of {cap}")]
    TooLarge { l: usize, cap: usize },
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
