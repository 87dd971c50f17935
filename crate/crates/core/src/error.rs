use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the domain an operation accepts.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The request is well formed but too large to carry out here.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A constructed object failed its own validation (asymmetric arc set, loop, ...).
    #[error("construction failed: {0}")]
    Construction(String),
    /// An internal consistency check failed; indicates a bug rather than bad input.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The requested variant does not exist for this input.
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
