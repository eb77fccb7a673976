use std::path::PathBuf;

use crate::metrics::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    NotFound(PathBuf),

    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),

    #[error("sample rate mismatch: expected {expected} Hz, found {found} Hz")]
    SampleRateMismatch { expected: u32, found: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input too short: need at least {needed} samples, got {got}")]
    InputTooShort { needed: usize, got: usize },

    #[error("mel filter {index} covers no FFT bins (fft size too small for the filter count)")]
    DegenerateFilter { index: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("no {0} trials in the score list")]
    MissingClass(Label),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("malformed wav file: {0}")]
    Wav(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
