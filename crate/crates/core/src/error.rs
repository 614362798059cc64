use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the inference kernel, sequence engine and analyses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("model needs at least one ball per box (got m = {0})")]
    InvalidModel(u32),

    #[error("box index {index} out of range for a model with {boxes} boxes")]
    BoxOutOfRange { index: usize, boxes: usize },

    #[error("invalid summary: {x} white draws out of {n}")]
    InvalidSummary { n: u64, x: u64 },

    #[error("contradictory evidence: every box has been excluded")]
    ContradictoryEvidence,

    #[error("indeterminate odds: boxes {i} and {j} are both excluded")]
    IndeterminateOdds { i: usize, j: usize },

    #[error("no closed-form all-black approximation for the all-white box {0}")]
    AllWhiteBox(usize),

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("prior has {got} weights, model has {expected} boxes")]
    PriorLength { got: usize, expected: usize },

    #[error("run length must be at least 1")]
    ZeroRunLength,

    #[error("value must be finite (got {0})")]
    NonFinite(f64),

    #[error("decimals must be between 1 and {max} (got {got})")]
    Decimals { got: u32, max: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("invalid color token {0:?}: expected 0/1 or B/W")]
    InvalidColor(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

/// Sequence file problems, with 1-based line numbers where one applies.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{path}: file contains no draws")]
    Empty { path: PathBuf },

    #[error("{path}:{line}: invalid draw {token:?} (expected 0 or 1)")]
    BadToken {
        path: PathBuf,
        line: usize,
        token: String,
    },

    #[error("{path}:{line}: header has no column named x")]
    MissingColumn { path: PathBuf, line: usize },

    #[error("{path}:{line}: row has {got} columns, header has {expected}")]
    ColumnCount {
        path: PathBuf,
        line: usize,
        got: usize,
        expected: usize,
    },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
