use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller passed arguments that violate an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition failed (zero inversion, singular form, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured resource cap was exceeded.
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u64 },
    /// A computed object disagrees with its closed-form description.
    #[error("parameter mismatch for {what}: expected {expected}, computed {computed}")]
    ParameterMismatch {
        what: String,
        expected: String,
        computed: String,
    },
    /// An internal self-check failed. Always a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
