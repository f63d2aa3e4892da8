//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order must be at least 2, got {0}")]
    GroupOrder(usize),

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("group orders differ: {0} vs {1}")]
    CtxMismatch(usize, usize),

    #[error("lattice parameter {name} = {value} does not divide the group order {n}")]
    NotADivisor {
        name: &'static str,
        value: usize,
        n: usize,
    },

    #[error("lattices differ (steps ({0}, {1}) vs ({2}, {3}))")]
    LatticeMismatch(usize, usize, usize, usize),

    #[error("operation needs an odd group order (2 must be invertible mod N), got N = {0}")]
    EvenOrder(usize),

    #[error("not a frame: smallest frame-operator eigenvalue {min_eig:.3e} is below the threshold {threshold:.3e}")]
    NotAFrame { min_eig: f64, threshold: f64 },

    #[error("group order {n} exceeds the limit {max} for full symbol STFTs (N^4 storage)")]
    TooLarge { n: usize, max: usize },

    #[error("matrix is not normal: ||MM* - M*M|| = {defect:.3e} exceeds {tol:.3e}")]
    NotNormal { defect: f64, tol: f64 },

    #[error("contour does not separate the spectrum: {0}")]
    Contour(String),

    #[error("operator is numerically singular: smallest singular value {smin:.3e} vs largest {smax:.3e}")]
    Singular { smin: f64, smax: f64 },

    #[error("invalid weight: {0}")]
    Weight(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
