use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("function returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },
    #[error("quadrature order {0} outside 1..=256")]
    OrderOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("index {0} outside 1..=64")]
    IndexOutOfRange(usize),
    #[error("failed to bracket a root of {stage}")]
    BracketFailure { stage: &'static str },
    #[error("grid of {0} points is too coarse (need at least 32)")]
    GridTooCoarse(usize),
    #[error("dimension N = {0} is not supported (use 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("eigenvalue index {0} too large for lattice enumeration")]
    Overflow(usize),
    #[error("value must be positive, got {0}")]
    NonPositive(f64),
    #[error("empty grid")]
    EmptyGrid,
    #[error("mass matrix deviates from identity by {deviation:e}")]
    QuadratureUnderResolved { deviation: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors caused by bad arguments rather than numerical failure.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NoSignChange { .. }
                | Error::OrderOutOfRange(_)
                | Error::DimensionMismatch { .. }
                | Error::IndexOutOfRange(_)
                | Error::GridTooCoarse(_)
                | Error::UnsupportedDimension(_)
                | Error::Overflow(_)
                | Error::NonPositive(_)
                | Error::EmptyGrid
                | Error::InvalidInput(_)
        )
    }
}
