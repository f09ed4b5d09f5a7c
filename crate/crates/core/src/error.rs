use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: unsupported image format")]
    UnsupportedFormat { path: PathBuf },

    #[error("{path}: corrupt image data: {reason}")]
    CorruptImage { path: PathBuf, reason: String },

    #[error("missing class directory {0}")]
    MissingDirectory(PathBuf),

    #[error("no images found in {0}")]
    NoImages(PathBuf),

    #[error("bad magic bytes: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    #[error("unsupported format version {found} (expected {expected})")]
    VersionMismatch { expected: u32, found: u32 },

    #[error("truncated payload: {0}")]
    Truncated(String),

    #[error("invalid label value {0} (expected +1 or -1)")]
    InvalidLabel(i64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dataset contains a single class")]
    SingleClass,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite loss at iteration {iteration}")]
    NonFiniteLoss { iteration: usize },

    #[error("every grid cell failed")]
    AllCellsFailed,

    #[error("config: {0}")]
    Config(String),

    #[error("unknown model {name:?}; valid names: {valid}")]
    UnknownModel { name: String, valid: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
