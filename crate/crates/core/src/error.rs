use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: dimension/modulus mismatches, violated preconditions.
    #[error("input error: {0}")]
    Input(String),

    /// A configured size budget refused the computation.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A condition that the underlying theory guarantees failed to hold.
    /// Never expected; surfaced loudly instead of being papered over.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
