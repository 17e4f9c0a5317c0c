use thiserror::Error;

/// Errors surfaced by code construction and search routines.
///
/// `Parameter` and `Capacity` are the two caller-facing failure classes:
/// a violated parameter inequality (named in the message) or a search that
/// would exceed its enumeration budget. `Defect` marks broken internal
/// invariants that no input should be able to reach.
#[derive(Debug, Error)]
pub enum Error {
    /// A constraint on the requested parameters does not hold.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested computation exceeds an enumeration budget.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// The operation is undefined for the given value (e.g. inverse of zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// Mismatched operands (lengths, fields) in a library call.
    #[error("usage error: {0}")]
    Usage(String),

    /// The supplied classical codes do not satisfy the CSS containment.
    #[error("construction error: {0}")]
    Construction(String),

    /// An internal invariant failed; this is a bug, not a caller error.
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}
