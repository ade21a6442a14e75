use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("{what} has size {actual}, above the enumeration cap of {cap}; {hint}")]
    SizeCap {
        what: &'static str,
        cap: usize,
        actual: usize,
        hint: &'static str,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("geometric precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported dimension {0} for this operation")]
    UnsupportedDimension(u8),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
