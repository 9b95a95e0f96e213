use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("expected {expected} numeric tokens after the dimension, found {found}")]
    TokenCount { expected: usize, found: usize },

    #[error("token {index} ({token:?}) is not a real number")]
    NotANumber { index: usize, token: String },

    #[error("matrix is not symmetric: max |M - M^T| = {deviation:e} exceeds {allowed:e}")]
    Asymmetric { deviation: f64, allowed: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("deck requires n >= 2, got n = {0}")]
    DeckTooSmall(usize),

    #[error("values are not sorted in descending order at position {0}")]
    Unsorted(usize),

    #[error("eigenvalue index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("eigenvalue {index} is not simple (cluster of size {cluster_size})")]
    NotSimple { index: usize, cluster_size: usize },

    #[error("reconstructed square {value:e} for eigenvalue {index} lies outside [0, 1]")]
    InconsistentSquare { index: usize, value: f64 },

    #[error("secular function evaluated at active pole {pole}")]
    AtPole { pole: f64 },

    #[error("secular root bracket ({lo}, {hi}) did not shrink below tolerance in {iterations} iterations")]
    BracketFailure { lo: f64, hi: f64, iterations: usize },

    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("dimension {n} exceeds the permutation search cap {cap}")]
    SearchTooLarge { n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
