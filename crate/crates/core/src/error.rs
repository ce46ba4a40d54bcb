use thiserror::Error;

/// Errors raised by the library.
///
/// Callers (the CLI in particular) distinguish two families: precondition
/// failures, where the input does not satisfy an operation's contract, and
/// resource failures, where a configured ceiling or time budget was hit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SidonError {
    #[error("invalid interval {lo}:{hi}: {reason}")]
    InvalidInterval { lo: u64, hi: u64, reason: &'static str },

    #[error("intervals {0}:{1} and {2}:{3} overlap")]
    Overlap(u64, u64, u64, u64),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl SidonError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        SidonError::Precondition(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        SidonError::Resource(msg.into())
    }

    /// True for errors caused by ceilings, budgets and timeouts rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, SidonError::Resource(_))
    }
}

pub type Result<T> = std::result::Result<T, SidonError>;
