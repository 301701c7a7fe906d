use thiserror::Error;

/// Errors raised by distance evaluation and the simplex lab.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    /// Caller passed arguments that violate an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// A numeric precondition (e.g. a sign change for bisection) does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested size or dimension is outside what the implementation covers.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The simplex sum vanished while the distance did not.
    #[error("simplex inequality violated: numerator {numerator} with zero simplex sum")]
    Violation { numerator: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}
