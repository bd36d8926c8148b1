//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot stratify split: cell {domain}/{label} has {count} document(s), need at least 2")]
    CannotStratify {
        domain: String,
        label: String,
        count: usize,
    },

    #[error("class {0} has no training examples")]
    EmptyClass(String),

    #[error("corrected {0} pool is empty; retraining is undefined")]
    EmptyPool(String),

    #[error("malformed {kind} file {path}: {detail}")]
    Parse {
        kind: &'static str,
        path: PathBuf,
        detail: String,
    },

    #[error("model mismatch: {0}")]
    ModelMismatch(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(kind: &'static str, path: impl Into<PathBuf>, detail: impl Into<String>) -> Self {
        Error::Parse {
            kind,
            path: path.into(),
            detail: detail.into(),
        }
    }
}
