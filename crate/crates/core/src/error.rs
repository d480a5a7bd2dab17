use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine reports. The `Display` form leads with the
/// error name so front ends can surface it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("MalformedLabel: {label:?}: {reason}")]
    MalformedLabel { label: String, reason: String },

    #[error("ParseError: {}:{line}: {message}", file.display())]
    Parse {
        file: PathBuf,
        line: u64,
        message: String,
    },

    #[error("IntegrityError: {0}")]
    Integrity(String),

    #[error("DimensionError: {0}")]
    Dimension(String),

    #[error("BadDate: {}:{line}: {value:?} is not an ISO-8601 calendar date", file.display())]
    BadDate {
        file: PathBuf,
        line: u64,
        value: String,
    },

    #[error("DimensionMismatch: expected {expected} levels, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("EmptyInput: {0}")]
    EmptyInput(&'static str),

    #[error("InsufficientData: {0}")]
    InsufficientData(String),

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("InvalidLevel: {0}")]
    InvalidLevel(String),

    #[error("IoError: {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable name of the variant, as shown at the start of `Display`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedLabel { .. } => "MalformedLabel",
            Error::Parse { .. } => "ParseError",
            Error::Integrity(_) => "IntegrityError",
            Error::Dimension(_) => "DimensionError",
            Error::BadDate { .. } => "BadDate",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyInput(_) => "EmptyInput",
            Error::InsufficientData(_) => "InsufficientData",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::Io { .. } => "IoError",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
