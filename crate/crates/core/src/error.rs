use thiserror::Error;

/// Errors produced by state construction, reduction, and spectral routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: index {index} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("{what} = {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("not a valid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("spectrum does not sum to 1: sum = {sum}")]
    SpectrumNotNormalized { sum: f64 },

    #[error("eigenvalue {value:.3e} is negative beyond the round-off tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("operation requires a bipartite density matrix, got {n_factors} tensor factors")]
    NotBipartite { n_factors: usize },

    #[error("sites ({i}, {j}) are not a pair of distinct bulk sites in 1..={n_bulk}")]
    InvalidSitePair { i: usize, j: usize, n_bulk: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
