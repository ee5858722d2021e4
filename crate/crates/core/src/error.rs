use thiserror::Error;

/// Errors shared by every module. The CLI maps them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration cap exceeded: {what} has more than {cap} elements")]
    CapExceeded { what: String, cap: usize },
    #[error("ambiguous case: {0}")]
    Ambiguous(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::FieldMismatch(_) | Error::Domain(_) => 1,
            Error::CapExceeded { .. } => 2,
            Error::Ambiguous(_) => 3,
            Error::Usage(_) => 64,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
