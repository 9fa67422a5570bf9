use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by [`ErrorKind`] so callers (the command-line
/// front end in particular) can map them onto exit statuses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: record {record}: {message}")]
    Format {
        path: PathBuf,
        record: usize,
        message: String,
    },

    #[error("record {record}: missing mandatory field `{field}`")]
    MissingField { record: usize, field: String },

    #[error("record {record}: cannot parse year `{value}`")]
    InvalidYear { record: usize, value: String },

    #[error("duplicate document id `{0}`")]
    DuplicateId(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("zero-mass {kind} `{name}` in correspondence analysis input")]
    ZeroMass { kind: &'static str, name: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("rendering failed: {0}")]
    Render(String),

    #[error("usage: {0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum ErrorKind {
    Usage,
    Input,
    Precondition,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io { .. } => ErrorKind::Io,
            Error::Usage(_) => ErrorKind::Usage,
            Error::Format { .. }
            | Error::MissingField { .. }
            | Error::InvalidYear { .. }
            | Error::DuplicateId(_) => ErrorKind::Input,
            Error::Parameter(_)
            | Error::ZeroMass { .. }
            | Error::Precondition(_)
            | Error::Render(_) => ErrorKind::Precondition,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for this error: 2 usage, 3 input, 4
    /// precondition, 5 I/O.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Usage => 2,
            ErrorKind::Input => 3,
            ErrorKind::Precondition => 4,
            ErrorKind::Io => 5,
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
