use thiserror::Error;

/// Errors raised by the library.
///
/// `Precondition` covers bad input, `Invariant` covers internal consistency
/// failures (a bug or a theory contradiction), `Budget` covers enumeration
/// limits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn inv(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code associated with the error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
