//! Error type shared by all operator modules.

use thiserror::Error;

/// Errors produced by contract checks and numerical failures.
#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state basis does not match operator basis")]
    BasisMismatch,

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("trajectory diverged near tau = {tau}")]
    Divergence { tau: f64 },

    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),

    #[error("unsupported query: {0}")]
    UnsupportedQuery(String),

    #[error("operator is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("projector is not idempotent (defect {defect:.3e})")]
    NotIdempotent { defect: f64 },

    #[error("requested size {requested} exceeds the cap {cap}")]
    ResourceLimit { requested: usize, cap: usize },

    #[error("polynomial degree {degree} exceeds grid resolution limit {limit}")]
    Resolution { degree: u32, limit: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
