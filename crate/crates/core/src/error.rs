use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("dimensionality must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate [{point}][{dim}] must be finite and strictly positive")]
    NonPositiveCoordinate { point: usize, dim: usize },
    #[error("dimension index {index} out of range for d = {d}")]
    DimensionOutOfRange { index: usize, d: usize },
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("dataset must be normalized into (1, 2]")]
    NotNormalized,
    #[error("interval count t must be at least 1")]
    ZeroIntervals,
    #[error("inc must be at least 1")]
    ZeroIncrement,
    #[error("breakpoints for dimension {0} failed to cover the data")]
    NoCover(usize),
    #[error("k = {k} is smaller than d = {d}")]
    KBelowDimension { k: usize, d: usize },
    #[error("k = {k} exceeds n = {n}")]
    KAboveSize { k: usize, n: usize },
    #[error("bucket grid {t}^{exp} does not fit in 128 bits")]
    GridOverflow { t: usize, exp: usize },
    #[error("point id {0} is not in the dataset")]
    UnknownPoint(usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("function family is empty")]
    EmptyFamily,
    #[error("invalid utility function: {0}")]
    InvalidFunction(String),
    #[error("CES exponent b must lie in (0, 1), got {0}")]
    InvalidExponent(f64),
    #[error("iteration limit must be at least 1")]
    ZeroIterations,
    #[error("circle construction needs m >= 2, got {0}")]
    CircleTooSmall(usize),
    #[error("no columns selected")]
    NoColumns,
    #[error("{path}: no usable rows ({dropped} dropped)")]
    NoRows { path: PathBuf, dropped: usize },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
