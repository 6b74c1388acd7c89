use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while building, transforming or reading affinity data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffinityError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({0}, {1}) differs from its transpose")]
    AsymmetricEntry(usize, usize),
    #[error("entry ({0}, {1}) is not strictly positive")]
    NonPositiveEntry(usize, usize),
    #[error("diagonal entry ({0}, {0}) is finite")]
    FiniteDiagonal(usize),
    #[error("entry ({0}, {1}) is NaN")]
    NotANumber(usize, usize),
    #[error("shared boundary length ({0}, {1}) is negative")]
    NegativeLength(usize, usize),
    #[error("threshold {0} is not strictly positive")]
    NonPositiveThreshold(f64),
    #[error("matrix has no finite off-diagonal entry")]
    AllInfinite,
    #[error("epsilon floor {0} is not strictly positive")]
    InvalidEpsilon(f64),
    #[error("scale factor {0} is not finite and strictly positive")]
    InvalidScale(f64),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("point {index} has {len} coordinates, expected {dim}")]
    DimensionMismatch { index: usize, len: usize, dim: usize },
    #[error("unsupported point dimension {0} (expected 1 or 2)")]
    UnsupportedDimension(usize),
    #[error("raw data is asymmetric at ({0}, {1}) and symmetrization mode is `require`")]
    SymmetrizationRejected(usize, usize),
}

/// Errors from the brute-force topological oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{n} points exceed the exhaustive oracle limit of {limit}")]
    TooLargeForOracle { n: usize, limit: usize },
}

/// Errors from curve evaluation and shape diagnostics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("threshold {0} is not strictly positive")]
    NonPositiveThreshold(f64),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(&'static str),
    #[error("malformed curve: {0}")]
    Malformed(String),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Affinity {
        path: PathBuf,
        #[source]
        source: AffinityError,
    },
    #[error("{path}: {source}")]
    Curve {
        path: PathBuf,
        #[source]
        source: CurveError,
    },
}

impl IoError {
    /// True when the failure came from the file system rather than from its contents.
    pub fn is_io(&self) -> bool {
        matches!(self, IoError::Io { .. })
    }
}
