use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input lies outside the supported numeric range.
    #[error("value {value} out of range: {reason}")]
    Range { value: u64, reason: &'static str },
    /// Input violates an operation's mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Request exceeds a configured computational limit.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A checked 64-bit operation would have wrapped.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// Checkpoint file could not be read, written or understood.
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Range { .. } | Error::Domain(_) => 1,
            Error::Resource(_) | Error::Overflow(_) | Error::Checkpoint(_) => 3,
        }
    }

    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Range { .. } => "range",
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::Overflow(_) => "overflow",
            Error::Checkpoint(_) => "checkpoint",
        }
    }
}
