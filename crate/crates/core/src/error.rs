use std::path::PathBuf;

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field degree v={0} (supported: 2..=16)")]
    UnsupportedField(u32),

    #[error("invalid BCH parameters v={v}, t={t}: {reason}")]
    InvalidCode { v: u32, t: u32, reason: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lookup table too short: {available} iterations available, {required} required")]
    LutTooShort { available: usize, required: usize },

    #[error("iBDD-SR needs {required} weights, {available} given")]
    MissingWeights { available: usize, required: usize },

    #[error("trajectory too short: {available} iterations available, {required} required")]
    TrajectoryTooShort { available: usize, required: usize },

    #[error("invalid bracket [{lo}, {hi}] dB: bracket endpoints agree (both {})", if *.converged { "converge" } else { "fail" })]
    InvalidBracket { lo: f64, hi: f64, converged: bool },

    #[error("Lloyd-Max did not converge within {iterations} iterations (last boundary shift {shift:e})")]
    NoConvergence { iterations: usize, shift: f64 },

    #[error("invalid config: `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
