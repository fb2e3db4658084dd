//! Measurement-based protection of two-qutrit entanglement against
//! correlated amplitude damping.
//!
//! All schemes build on selective (probabilistic) operations applied to
//! each side. The single-side building blocks are
//!
//!   WM(p1, p2)  = diag(1, sqrt(1 - p1), sqrt(1 - p2))
//!   QMR(q1, q2) = diag(sqrt((1 - q1)(1 - q2)), sqrt(1 - q2), sqrt(1 - q1))
//!
//! where WM partially collapses toward the ground level before the noise
//! and QMR reverses the damping bias afterwards. The environment-assisted
//! variant post-selects on the no-decay Kraus branch of the damping
//! channel itself; with q1 = d1 and q2 = d2 the reversal then cancels the
//! branch amplitudes exactly and the input state returns with probability
//! ((1 - d1)(1 - d2))^2 on a maximally entangled pair.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{self, apply_to_subsystem, correlated_amplitude_damping};
use crate::error::{Error, Result};
use crate::measures;
use crate::qmat::ComplexMatrix;
use crate::states::{maximally_entangled, DensityMatrix};
use crate::tol;

/// Measurement strengths of a protection run: `p1`, `p2` weaken the two
/// excited levels before the noise, `q1`, `q2` reverse them afterwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Strengths {
    pub p1: f64,
    pub p2: f64,
    pub q1: f64,
    pub q2: f64,
}

/// A trace-nonincreasing operation: Kraus operators with
/// sum K^dag K <= I, applied by conjugation and post-selection.
#[derive(Clone, Debug)]
pub struct SelectiveOperation {
    operators: Vec<ComplexMatrix>,
    dim: usize,
}

impl SelectiveOperation {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match operators.first() {
            Some(k) if k.is_square() && k.rows() > 0 => k.rows(),
            _ => {
                return Err(Error::DimensionMismatch(
                    "selective operation needs at least one square operator".into(),
                ))
            }
        };
        let mut gram = ComplexMatrix::zeros(dim, dim);
        for k in &operators {
            if k.rows() != dim || k.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "operator is {}x{}, expected {dim}x{dim}",
                    k.rows(),
                    k.cols()
                )));
            }
            k.check_finite()?;
            gram = gram.add(&k.adjoint().matmul(k));
        }
        let defect = ComplexMatrix::identity(dim).sub(&gram);
        let spectrum = defect.hermitian_spectrum()?;
        let min_eigenvalue = *spectrum
            .eigenvalues
            .last()
            .expect("spectrum of a nonempty matrix");
        if min_eigenvalue < -tol::SELECTIVE_DEFECT {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { operators, dim })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn unit_interval_open(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..1.0).contains(&value) {
        return Err(Error::ParamOutOfRange {
            name,
            value,
            range: "[0, 1)",
        });
    }
    Ok(())
}

/// Pre-noise weak measurement on one qutrit:
/// diag(1, sqrt(1 - p1), sqrt(1 - p2)).
pub fn weak_measurement(p1: f64, p2: f64) -> Result<SelectiveOperation> {
    unit_interval_open("p1", p1)?;
    unit_interval_open("p2", p2)?;
    let k = ComplexMatrix::from_diag(&[
        Complex64::new(1.0, 0.0),
        Complex64::new((1.0 - p1).sqrt(), 0.0),
        Complex64::new((1.0 - p2).sqrt(), 0.0),
    ]);
    SelectiveOperation::new(vec![k])
}

/// Post-noise measurement reversal on one qutrit:
/// diag(sqrt((1 - q1)(1 - q2)), sqrt(1 - q2), sqrt(1 - q1)).
pub fn qmr(q1: f64, q2: f64) -> Result<SelectiveOperation> {
    unit_interval_open("q1", q1)?;
    unit_interval_open("q2", q2)?;
    let k = ComplexMatrix::from_diag(&[
        Complex64::new(((1.0 - q1) * (1.0 - q2)).sqrt(), 0.0),
        Complex64::new((1.0 - q2).sqrt(), 0.0),
        Complex64::new((1.0 - q1).sqrt(), 0.0),
    ]);
    SelectiveOperation::new(vec![k])
}

fn post_select(sum: ComplexMatrix, dims: Vec<usize>) -> Result<(DensityMatrix, f64)> {
    let probability = sum.trace().re;
    if probability <= tol::ZERO_PROBABILITY {
        return Err(Error::ZeroProbability {
            probability,
            tol: tol::ZERO_PROBABILITY,
        });
    }
    let normalized = sum.scaled(Complex64::new(1.0 / probability, 0.0));
    Ok((
        DensityMatrix::from_parts_unchecked(normalized, dims),
        probability,
    ))
}

/// Conjugate, read the branch probability off the trace, renormalize.
pub fn apply_selective(
    op: &SelectiveOperation,
    rho: &DensityMatrix,
) -> Result<(DensityMatrix, f64)> {
    if op.dim != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operation acts on dimension {}, state has {}",
            op.dim,
            rho.dim()
        )));
    }
    let sum = channels::conjugate_sum(&op.operators, rho.matrix());
    post_select(sum, rho.dims().to_vec())
}

/// Selective operation on one tensor factor, identity on the rest.
pub fn apply_selective_to_subsystem(
    op: &SelectiveOperation,
    rho: &DensityMatrix,
    target: usize,
) -> Result<(DensityMatrix, f64)> {
    let lifted = channels::lift_operators(&op.operators, rho.dims(), target, op.dim)?;
    let sum = channels::conjugate_sum(&lifted, rho.matrix());
    post_select(sum, rho.dims().to_vec())
}

/// Protection scheme wrapped around the correlated damping noise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Noise only; success probability is exactly 1.
    None,
    /// Weak measurement before the noise, reversal after it.
    WmQmr,
    /// Post-selection on the no-decay noise branch, then reversal.
    EamQmr,
}

/// Outcome of one protection run on a two-qutrit state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProtectionReport {
    pub scheme: Scheme,
    pub strengths: Strengths,
    pub negativity: f64,
    pub success_probability: f64,
    pub state: DensityMatrix,
}

/// Run the scheme with both-sided noise on the maximally entangled
/// two-qutrit state.
pub fn run_scheme(
    scheme: Scheme,
    d1: f64,
    d2: f64,
    strengths: &Strengths,
) -> Result<ProtectionReport> {
    run_scheme_on(scheme, &maximally_entangled(3)?, d1, d2, strengths)
}

/// Run the scheme on an arbitrary two-qutrit state. Every selective stage
/// acts on both sides; the overall success probability is the product of
/// the branch probabilities, and the noise channel in between is trace
/// preserving.
pub fn run_scheme_on(
    scheme: Scheme,
    rho0: &DensityMatrix,
    d1: f64,
    d2: f64,
    strengths: &Strengths,
) -> Result<ProtectionReport> {
    if rho0.dims() != [3, 3] {
        return Err(Error::DimensionMismatch(format!(
            "protection schemes act on a qutrit pair, state has dims {:?}",
            rho0.dims()
        )));
    }
    let cad = correlated_amplitude_damping(d1, d2)?;
    let (state, success_probability) = match scheme {
        Scheme::None => {
            let rho = apply_to_subsystem(&cad, rho0, 0)?;
            let rho = apply_to_subsystem(&cad, &rho, 1)?;
            (rho, 1.0)
        }
        Scheme::WmQmr => {
            let wm = weak_measurement(strengths.p1, strengths.p2)?;
            let (rho, pa) = apply_selective_to_subsystem(&wm, rho0, 0)?;
            let (rho, pb) = apply_selective_to_subsystem(&wm, &rho, 1)?;
            let rho = apply_to_subsystem(&cad, &rho, 0)?;
            let rho = apply_to_subsystem(&cad, &rho, 1)?;
            let reversal = qmr(strengths.q1, strengths.q2)?;
            let (rho, pc) = apply_selective_to_subsystem(&reversal, &rho, 0)?;
            let (rho, pd) = apply_selective_to_subsystem(&reversal, &rho, 1)?;
            (rho, pa * pb * pc * pd)
        }
        Scheme::EamQmr => {
            let no_decay = SelectiveOperation::new(vec![cad.operators()[0].clone()])?;
            let (rho, pa) = apply_selective_to_subsystem(&no_decay, rho0, 0)?;
            let (rho, pb) = apply_selective_to_subsystem(&no_decay, &rho, 1)?;
            let reversal = qmr(strengths.q1, strengths.q2)?;
            let (rho, pc) = apply_selective_to_subsystem(&reversal, &rho, 0)?;
            let (rho, pd) = apply_selective_to_subsystem(&reversal, &rho, 1)?;
            (rho, pa * pb * pc * pd)
        }
    };
    let negativity = measures::negativity(&state, 1)?;
    Ok(ProtectionReport {
        scheme,
        strengths: *strengths,
        negativity,
        success_probability,
        state,
    })
}

fn preferable(candidate: &ProtectionReport, best: &ProtectionReport) -> bool {
    match candidate.negativity.total_cmp(&best.negativity) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match candidate
            .success_probability
            .total_cmp(&best.success_probability)
        {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match candidate.strengths.q1.total_cmp(&best.strengths.q1) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    candidate.strengths.q2.total_cmp(&best.strengths.q2) == Ordering::Less
                }
            },
        },
    }
}

/// Search reversal strengths maximizing negativity (ties broken by higher
/// success probability, then by the smaller strength pair): a 20x20 grid
/// over [0, 0.95]^2 followed by compass pattern search with step halving
/// from 0.05 down to 1e-3. The `base` strengths supply `p1`, `p2` for the
/// weak-measurement scheme.
pub fn optimize_qmr(
    scheme: Scheme,
    rho0: &DensityMatrix,
    d1: f64,
    d2: f64,
    base: &Strengths,
) -> Result<(Strengths, ProtectionReport)> {
    let evaluate = |q1: f64, q2: f64| -> Result<Option<ProtectionReport>> {
        let s = Strengths { q1, q2, ..*base };
        match run_scheme_on(scheme, rho0, d1, d2, &s) {
            Ok(report) => Ok(Some(report)),
            Err(Error::ZeroProbability { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };

    let mut best: Option<ProtectionReport> = None;
    for i in 0..20 {
        for j in 0..20 {
            if let Some(report) = evaluate(i as f64 / 20.0, j as f64 / 20.0)? {
                if best.as_ref().is_none_or(|b| preferable(&report, b)) {
                    best = Some(report);
                }
            }
        }
    }
    let mut best = best.ok_or(Error::NoConvergence {
        context: "every reversal grid point was post-selected away",
    })?;

    let mut step = 0.05;
    while step >= 1e-3 {
        let (q1, q2) = (best.strengths.q1, best.strengths.q2);
        let mut moved = false;
        for (dq1, dq2) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let c1 = (q1 + dq1).clamp(0.0, 0.999_999_9);
            let c2 = (q2 + dq2).clamp(0.0, 0.999_999_9);
            if let Some(report) = evaluate(c1, c2)? {
                if preferable(&report, &best) {
                    best = report;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok((best.strengths, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::maximally_mixed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn strength_one_is_rejected() {
        assert!(matches!(
            weak_measurement(1.0, 0.2),
            Err(Error::ParamOutOfRange { name: "p1", .. })
        ));
        assert!(matches!(
            qmr(0.2, -0.1),
            Err(Error::ParamOutOfRange { name: "q2", .. })
        ));
    }

    #[test]
    fn overcomplete_operators_are_rejected() {
        let k = ComplexMatrix::identity(3).scaled(c(1.1, 0.0));
        match SelectiveOperation::new(vec![k]) {
            Err(Error::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.21).abs() < 1e-12)
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn reversal_success_on_mixed_qutrit() {
        let op = qmr(0.5, 0.5).unwrap();
        let rho = maximally_mixed(&[3]).unwrap();
        let (out, p) = apply_selective(&op, &rho).unwrap();
        // tr[K (I/3) K^dag] = (0.25 + 0.5 + 0.5) / 3
        assert!((p - 5.0 / 12.0).abs() < 1e-12);
        assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_branch_is_zero_probability() {
        let k = ComplexMatrix::from_diag(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let op = SelectiveOperation::new(vec![k]).unwrap();
        let rho =
            crate::states::pure_state(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], &[3]).unwrap();
        assert!(matches!(
            apply_selective(&op, &rho),
            Err(Error::ZeroProbability { .. })
        ));
    }

    #[test]
    fn unprotected_negativity_has_closed_form() {
        let report = run_scheme(Scheme::None, 0.3, 0.5, &Strengths::default()).unwrap();
        assert!((report.negativity - 109.0 / 300.0).abs() < 1e-9);
        assert_eq!(report.success_probability, 1.0);
    }

    #[test]
    fn matched_reversal_restores_maximal_entanglement() {
        let s = Strengths {
            q1: 0.3,
            q2: 0.5,
            ..Strengths::default()
        };
        let report = run_scheme(Scheme::EamQmr, 0.3, 0.5, &s).unwrap();
        assert!(
            (report.negativity - 1.0).abs() < 1e-9,
            "negativity {} should be 1",
            report.negativity
        );
        assert!((report.success_probability - 0.1225).abs() < 1e-12);
    }

    #[test]
    fn mismatched_reversal_restores_less() {
        let matched = Strengths {
            q1: 0.3,
            q2: 0.5,
            ..Strengths::default()
        };
        let off = Strengths {
            q1: 0.5,
            q2: 0.3,
            ..Strengths::default()
        };
        let a = run_scheme(Scheme::EamQmr, 0.3, 0.5, &matched).unwrap();
        let b = run_scheme(Scheme::EamQmr, 0.3, 0.5, &off).unwrap();
        assert!(b.negativity < a.negativity);
    }

    #[test]
    fn optimizer_finds_the_matched_reversal() {
        let rho0 = maximally_entangled(3).unwrap();
        let (s, report) =
            optimize_qmr(Scheme::EamQmr, &rho0, 0.3, 0.5, &Strengths::default()).unwrap();
        assert!((s.q1 - 0.3).abs() < 1e-9, "q1 = {}", s.q1);
        assert!((s.q2 - 0.5).abs() < 1e-9, "q2 = {}", s.q2);
        assert!((report.negativity - 1.0).abs() < 1e-9);
        assert!((report.success_probability - 0.1225).abs() < 1e-9);
    }

    #[test]
    fn optimized_weak_measurement_beats_no_protection() {
        let rho0 = maximally_entangled(3).unwrap();
        let unprotected = run_scheme(Scheme::None, 0.3, 0.5, &Strengths::default()).unwrap();
        let base = Strengths {
            p1: 0.7,
            p2: 0.7,
            ..Strengths::default()
        };
        let (_, protected) = optimize_qmr(Scheme::WmQmr, &rho0, 0.3, 0.5, &base).unwrap();
        assert!(
            protected.negativity > unprotected.negativity,
            "{} should exceed {}",
            protected.negativity,
            unprotected.negativity
        );
    }

    #[test]
    fn tie_break_prefers_the_smallest_strengths() {
        let rho0 = maximally_entangled(3).unwrap();
        let (s, report) =
            optimize_qmr(Scheme::None, &rho0, 0.3, 0.5, &Strengths::default()).unwrap();
        assert_eq!((s.q1, s.q2), (0.0, 0.0));
        assert_eq!(report.success_probability, 1.0);
    }

    #[test]
    fn scheme_names_serialize_kebab_case() {
        assert_eq!(serde_json::to_string(&Scheme::None).unwrap(), "\"none\"");
        assert_eq!(
            serde_json::to_string(&Scheme::EamQmr).unwrap(),
            "\"eam-qmr\""
        );
        let parsed: Scheme = serde_json::from_str("\"wm-qmr\"").unwrap();
        assert_eq!(parsed, Scheme::WmQmr);
    }
}
