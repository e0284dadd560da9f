//! Error taxonomy. Parse/usage problems, capacity refusals, and failed
//! mathematical hypotheses are distinct so callers can exit accordingly.

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input document, literal, word, or group description.
    #[error("parse error: {0}")]
    Parse(String),

    /// A configured cap would be exceeded; the operation is refused, not attempted.
    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    /// An enumeration budget would be exceeded (distinct from hard caps so the
    /// caller can retry with a different strategy or budget).
    #[error("budget exceeded: {what} would need {needed} steps, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    /// A mathematical claim this tool set out to verify does not hold for the
    /// given input — reported loudly, never silently ignored.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The input fails an operation's stated precondition (e.g. tuples that
    /// are not automorphism independent, a non-perfect group where a
    /// quasisimple one is required).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Cross-object misuse, e.g. an element handle used with the wrong group.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// Valid input outside the supported range of the operation.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
