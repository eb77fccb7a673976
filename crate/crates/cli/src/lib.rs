//! Batch front door for `pncc-core`: feature extraction over file lists,
//! spectrogram rendering and score-file evaluation, plus the on-disk
//! formats those commands read and write.

pub mod commands;
pub mod feature_file;
pub mod manifest;
pub mod pgm;
pub mod score_file;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pncc_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("bad feature file: {0}")]
    FeatureFormat(String),

    #[error("{path}:{line}: {msg}")]
    ScoreLine {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("manifest: {0}")]
    Manifest(String),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
