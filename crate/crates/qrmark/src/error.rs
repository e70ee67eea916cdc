use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qrmark_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        source: image::ImageError,
    },
    #[error("{path}: unsupported image ({reason})")]
    UnsupportedImage { path: PathBuf, reason: String },
    #[error("QR encoding failed: {0}")]
    Qr(String),
    #[error("invalid attack spec: {0}")]
    AttackSpec(String),
    #[error("JPEG codec: {0}")]
    Jpeg(String),
    #[error("key file: {0}")]
    KeyFile(String),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
