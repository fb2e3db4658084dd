//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor dimension {dim} exceeds the supported maximum {max}")]
    CapacityExceeded { dim: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: max |m - m^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("amplitude vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("mixture weights invalid: {0}")]
    WeightsInvalid(String),

    #[error("trace must be one: got {trace}")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("parameter {name} = {value} outside {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("integration step too large: dt * max|gamma| = {0} exceeds 0.1")]
    StepTooLarge(f64),

    #[error("trace drifted by {drift:e} at t = {t}, tolerance {tol:e}")]
    TraceDrift { t: f64, drift: f64, tol: f64 },

    #[error("collision branch {index} is not unitary: max |S^dag S - I| = {deviation:e}")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("Fock truncation boundary holds population {population:e}, tolerance {tol:e}")]
    TruncationLeak { population: f64, tol: f64 },

    #[error("measure is already {value:e} at the interval start")]
    NotEntangledAtStart { value: f64 },

    #[error("selection probability {probability:e} is below {tol:e}")]
    ZeroProbability { probability: f64, tol: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{context} failed to converge")]
    NoConvergence { context: &'static str },
}
