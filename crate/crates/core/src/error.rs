use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inputs are individually well formed but do not fit together
    /// (mismatched primes, sizes, groups, unsupported group kinds).
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Enumeration would exceed the configured element cap.
    #[error("resource cap exceeded: {what} needs more than {cap} elements")]
    Resource { what: String, cap: usize },

    /// Malformed text input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
