use thiserror::Error;

/// Errors produced by code-family construction, IO, and optimization.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: n={n}, T={t} (need n >= 1, T >= 2)")]
    InvalidDimensions { n: usize, t: usize },

    #[error("bit index ({code}, {chip}) out of range for {n}x{t} matrix")]
    IndexOutOfRange {
        code: usize,
        chip: usize,
        n: usize,
        t: usize,
    },

    #[error("infeasible configuration: {0}")]
    Infeasible(String),

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed code file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
