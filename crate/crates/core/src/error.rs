use thiserror::Error;

/// Errors raised by the algebra routines and the file loaders.
///
/// Each variant belongs to one [`ErrorKind`], which the command-line front
/// end maps onto its exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid group description: {0}")]
    InvalidGroup(String),

    #[error("invalid ring map: {0}")]
    InvalidMap(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("computation cancelled")]
    Cancelled,

    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Parse,
    Unsupported,
    Precondition,
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    /// Prefixes the message with `ctx`, keeping the variant.
    pub fn context(self, ctx: &str) -> Self {
        let f = |m: String| format!("{ctx}: {m}");
        match self {
            Error::Parse { offset, message } => Error::Parse { offset, message: f(message) },
            Error::RingMismatch(m) => Error::RingMismatch(f(m)),
            Error::Dimension(m) => Error::Dimension(f(m)),
            Error::InvalidGroup(m) => Error::InvalidGroup(f(m)),
            Error::InvalidMap(m) => Error::InvalidMap(f(m)),
            Error::Unsupported(m) => Error::Unsupported(f(m)),
            Error::Precondition(m) => Error::Precondition(f(m)),
            Error::Io(m) => Error::Io(f(m)),
            Error::Cancelled => Error::Cancelled,
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::InvalidGroup(_) | Error::InvalidMap(_) => ErrorKind::Parse,
            Error::Io(_) => ErrorKind::Usage,
            Error::Unsupported(_) | Error::Cancelled => ErrorKind::Unsupported,
            Error::RingMismatch(_) | Error::Dimension(_) | Error::Precondition(_) => {
                ErrorKind::Precondition
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
