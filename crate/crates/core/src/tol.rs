//! Numerical gates used across the crate.
//!
//! Every tolerance that decides whether an input is accepted or a run is
//! aborted is a named constant here, so tests and callers can reference the
//! exact same numbers the library enforces.

/// Hermiticity gate: max |m - m^dag| admitted by the eigensolver and by
/// state validation.
pub const HERMITICITY: f64 = 1e-9;

/// Positivity gate: eigenvalues down to -PSD count as nonnegative.
pub const PSD: f64 = 1e-10;

/// State trace gate: |trace - 1| admitted by validation.
pub const TRACE: f64 = 1e-9;

/// Pure-state amplitude norm gate: |norm - 1| admitted by `pure_state`.
pub const STATE_NORM: f64 = 1e-9;

/// Mixture weight sum gate: |sum w_i - 1| admitted by `separable_mixture`.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Kraus completeness gate: max |sum K^dag K - I| admitted by channel
/// constructors.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Collision branch unitarity gate: max |S^dag S - I| per branch.
pub const UNITARITY: f64 = 1e-10;

/// Trace drift allowed at any point of an integrated trajectory.
pub const TRACE_DRIFT: f64 = 1e-8;

/// RK4 stability guard: dt * max|gamma(t)| must stay at or below this.
pub const STABILITY_GUARD: f64 = 0.1;

/// Entanglement measures at or below this level count as zero when locating
/// a death point.
pub const MEASURE_ZERO: f64 = 1e-9;

/// Parameter resolution of the death-point bisection.
pub const ESD_RESOLUTION: f64 = 1e-6;

/// Population allowed on truncated Fock boundary states before the result
/// is rejected as clipped.
pub const TRUNCATION_LEAK: f64 = 1e-6;

/// Selective-operation defect gate: I - sum K^dag K must be PSD down to
/// this level.
pub const SELECTIVE_DEFECT: f64 = 1e-10;

/// Selection probabilities at or below this reject a selective operation
/// instead of dividing by them.
pub const ZERO_PROBABILITY: f64 = 1e-14;
