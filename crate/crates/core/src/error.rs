use std::fmt;

/// Crate-wide error type.
///
/// `Internal` marks a violated construction invariant (something the
/// construction itself guarantees failed to hold); everything else is input
/// validation.
#[derive(Debug)]
pub enum Error {
    /// Bad user-supplied parameter (out of range, wrong shape, not prime, ...).
    InvalidParameter(String),
    /// A requested enumeration exceeds the configured budget.
    BudgetExceeded(String),
    /// The codes handed to the CSS construction do not nest.
    NestingViolation(String),
    /// An internal cross-check failed; indicates a bug, not bad input.
    Internal(String),
    /// File I/O.
    Io(std::io::Error),
    /// Malformed alist / descriptor content.
    Format(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::BudgetExceeded(m) => write!(f, "enumeration budget exceeded: {m}"),
            Error::NestingViolation(m) => write!(f, "nesting violation: {m}"),
            Error::Internal(m) => write!(f, "internal assertion failed: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Format(m) => write!(f, "format error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
