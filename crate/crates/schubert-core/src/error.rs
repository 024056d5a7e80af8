//! Crate-wide error type.

/// Errors reported by the engine.
///
/// Precondition violations surface as [`Error::InvalidInput`] with a message
/// naming the offending quantity; parse failures keep the offending token so
/// callers (in particular the CLI) can echo it back.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A structural precondition was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An element of the would-be sub-index-set is missing from the
    /// reference set.
    #[error("element {element} does not belong to the reference index set")]
    NotASubset { element: u32 },

    /// A token could not be parsed as a partition, index set, or number.
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// A malformed line in an on-disk coefficient cache.
    #[error("cache line {line}: {reason}")]
    CacheLine { line: usize, reason: String },

    /// Two cache entries (or a cache entry and a computed value) disagree.
    #[error("conflicting cached values for {key}: {existing} vs {incoming}")]
    CacheConflict {
        key: String,
        existing: u64,
        incoming: u64,
    },

    /// 64-bit coefficient arithmetic overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An underlying I/O failure (cache files).
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Shorthand used throughout the crate for precondition failures.
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
