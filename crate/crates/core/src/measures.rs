//! Entanglement, coherence, and mixedness measures.
//!
//! * concurrence: two-qubit spin-flip construction. With
//!   rho_tilde = (Y x Y) conj(rho) (Y x Y) and lambda_i the descending
//!   square roots of the eigenvalues of sqrt(rho) rho_tilde sqrt(rho),
//!   C = max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4).
//! * negativity: N = (||rho^PT||_1 - 1)/2 across a chosen bipartition.
//! * PPT test: the partial transpose is positive semidefinite down to
//!   `tol::PSD`.
//! * von Neumann entropy and l1 coherence both use log base 2 and the
//!   lexicographic computational basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;
use crate::states::DensityMatrix;
use crate::tol;

/// Parameters of the two-qubit thermal steady state: mean bath occupation
/// `n_bar`, scaled transition frequency `omega_bar`, dipole coupling
/// asymmetry `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    pub n_bar: f64,
    pub omega_bar: f64,
    pub delta: f64,
}

/// Output of the closed-form thermal concurrence: the formula value as
/// written, the value clipped to [0, 1], and whether clipping changed it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalConcurrence {
    pub raw: f64,
    pub clamped: f64,
    pub out_of_range: bool,
}

fn bipartition_transpose(rho: &DensityMatrix, cut: usize) -> Result<ComplexMatrix> {
    let n = rho.dims().len();
    if cut == 0 || cut >= n {
        return Err(Error::DimensionMismatch(format!(
            "cut must split {n} subsystems into two nonempty blocks, got {cut}"
        )));
    }
    let mut pt = rho.matrix().clone();
    for s in 0..cut {
        pt = pt.partial_transpose(rho.dims(), s)?;
    }
    Ok(pt)
}

/// Negativity across the bipartition separating the first `cut` tensor
/// factors from the rest.
pub fn negativity(rho: &DensityMatrix, cut: usize) -> Result<f64> {
    let pt = bipartition_transpose(rho, cut)?;
    Ok((pt.trace_norm()? - 1.0) / 2.0)
}

/// Whether the partial transpose across the bipartition is PSD.
pub fn is_ppt(rho: &DensityMatrix, cut: usize) -> Result<bool> {
    let pt = bipartition_transpose(rho, cut)?;
    let spec = pt.hermitian_spectrum()?;
    let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
    Ok(min >= -tol::PSD)
}

/// V max(lambda, 0)^(1/2) V^dag of a PSD Hermitian matrix.
fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = m.hermitian_spectrum()?;
    let n = m.rows();
    let mut w = spec.vectors.clone();
    for (j, &l) in spec.eigenvalues.iter().enumerate() {
        let r = Complex64::new(l.max(0.0).sqrt(), 0.0);
        for k in 0..n {
            w[(k, j)] *= r;
        }
    }
    Ok(w.matmul(&spec.vectors.adjoint()))
}

pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "concurrence is defined for dims [2, 2], got {:?}",
            rho.dims()
        )));
    }
    let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let yy = y.tensor(&y)?;
    let rho_tilde = yy.matmul(&rho.matrix().conj()).matmul(&yy);
    let root = sqrt_psd(rho.matrix())?;
    let m = root.matmul(&rho_tilde).matmul(&root);
    let spec = m.hermitian_spectrum()?;
    // Eigenvalues here are squares of the lambda_i, so roundoff noise at
    // eps-level turns into sqrt(eps)-level garbage after the square root.
    // The input has unit trace, which fixes the noise scale of the matmul
    // chain near eps; anything below the floor is indistinguishable from
    // zero in f64.
    let floor = 256.0 * f64::EPSILON * spec.eigenvalues[0].max(1.0);
    let l: Vec<f64> = spec
        .eigenvalues
        .iter()
        .map(|&mu| if mu > floor { mu.sqrt() } else { 0.0 })
        .collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// -sum lambda log2 lambda over the positive eigenvalues.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = rho.matrix().hermitian_spectrum()?;
    Ok(spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum())
}

/// Sum of |rho_ij| over i != j.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// tr(rho^2), equal to the squared Frobenius norm for Hermitian input.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().data().iter().map(|z| z.norm_sqr()).sum()
}

/// Closed-form steady-state concurrence of the dissipative two-qubit
/// thermal model. With u = 1 + 2 n_bar and A = 4 omega_bar^2 + u^2:
///
///   raw = 2 sqrt(delta^2 A) / (u A) - 1/2 + A / (2 u^2 A)
///
/// The value is reported as written plus clipped to the physical range
/// [0, 1]; `out_of_range` flags that clipping changed it.
pub fn thermal_steady_concurrence(params: ThermalParams) -> Result<ThermalConcurrence> {
    let ThermalParams {
        n_bar,
        omega_bar,
        delta,
    } = params;
    if !n_bar.is_finite() || n_bar < 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "n_bar",
            value: n_bar,
            range: "[0, inf)",
        });
    }
    if !omega_bar.is_finite() || omega_bar < 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "omega_bar",
            value: omega_bar,
            range: "[0, inf)",
        });
    }
    if !delta.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            range: "(-inf, inf)",
        });
    }
    let u = 1.0 + 2.0 * n_bar;
    let a = 4.0 * omega_bar * omega_bar + u * u;
    let raw = 2.0 * (delta * delta * a).sqrt() / (u * a) - 0.5 + a / (2.0 * u * u * a);
    let clamped = raw.clamp(0.0, 1.0);
    Ok(ThermalConcurrence {
        raw,
        clamped,
        out_of_range: !(0.0..=1.0).contains(&raw),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amplitude_damping, apply_to_subsystem, depolarizing};
    use crate::states::{
        bell_state, maximally_entangled, maximally_mixed, pure_state, separable_mixture, BellKind,
        MixtureTerm,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_states_are_maximally_entangled() {
        for kind in [
            BellKind::PhiPlus,
            BellKind::PhiMinus,
            BellKind::PsiPlus,
            BellKind::PsiMinus,
        ] {
            let rho = bell_state(kind);
            assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
            assert!((negativity(&rho, 1).unwrap() - 0.5).abs() < 1e-12);
            assert!(!is_ppt(&rho, 1).unwrap());
        }
    }

    #[test]
    fn product_state_has_no_entanglement() {
        let rho = pure_state(
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[2, 2],
        )
        .unwrap();
        assert!(concurrence(&rho).unwrap() < 1e-12);
        assert!(negativity(&rho, 1).unwrap().abs() < 1e-12);
        assert!(is_ppt(&rho, 1).unwrap());
    }

    #[test]
    fn depolarized_bell_follows_one_minus_two_p() {
        let rho0 = bell_state(BellKind::PhiPlus);
        for &(p, want) in &[(0.1, 0.8), (0.25, 0.5), (0.5, 0.0), (0.7, 0.0)] {
            let ch = depolarizing(p).unwrap();
            let rho = apply_to_subsystem(&ch, &rho0, 1).unwrap();
            let got = concurrence(&rho).unwrap();
            assert!(
                (got - want).abs() < 1e-12,
                "concurrence at p = {p}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn damped_bell_concurrence_is_sqrt_survival() {
        let rho0 = bell_state(BellKind::PhiPlus);
        let ch = amplitude_damping(0.36).unwrap();
        let rho = apply_to_subsystem(&ch, &rho0, 1).unwrap();
        assert!((concurrence(&rho).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_pair_is_fully_separable() {
        let rho = maximally_mixed(&[2, 2]).unwrap();
        assert!(concurrence(&rho).unwrap() == 0.0);
        assert!(negativity(&rho, 1).unwrap().abs() < 1e-12);
        assert!(is_ppt(&rho, 1).unwrap());
    }

    #[test]
    fn concurrence_rejects_non_two_qubit_input() {
        let rho = maximally_mixed(&[3, 3]).unwrap();
        assert!(matches!(
            concurrence(&rho),
            Err(Error::DimensionMismatch(_))
        ));
        let flat = maximally_mixed(&[4]).unwrap();
        assert!(matches!(
            concurrence(&flat),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn qutrit_pair_negativity_reaches_one() {
        let rho = maximally_entangled(3).unwrap();
        assert!((negativity(&rho, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negativity_needs_a_real_bipartition() {
        let rho = maximally_mixed(&[4]).unwrap();
        assert!(matches!(
            negativity(&rho, 1),
            Err(Error::DimensionMismatch(_))
        ));
        let pair = maximally_mixed(&[2, 2]).unwrap();
        assert!(matches!(
            negativity(&pair, 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn entropy_of_standard_states() {
        let pure = bell_state(BellKind::PhiPlus);
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-10);
        let half = maximally_mixed(&[2]).unwrap();
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);
        let quarter = maximally_mixed(&[2, 2]).unwrap();
        assert!((von_neumann_entropy(&quarter).unwrap() - 2.0).abs() < 1e-12);
        let d6 = maximally_mixed(&[2, 3]).unwrap();
        assert!((von_neumann_entropy(&d6).unwrap() - 6.0f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn coherence_of_standard_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = pure_state(&[c(h, 0.0), c(h, 0.0)], &[2]).unwrap();
        assert!((l1_coherence(&plus) - 1.0).abs() < 1e-12);
        let bell = bell_state(BellKind::PhiPlus);
        assert!((l1_coherence(&bell) - 1.0).abs() < 1e-12);
        let ghz3 = maximally_entangled(3).unwrap();
        assert!((l1_coherence(&ghz3) - 2.0).abs() < 1e-12);
        let mixed = maximally_mixed(&[2]).unwrap();
        assert!(l1_coherence(&mixed) == 0.0);
    }

    #[test]
    fn purity_of_standard_states() {
        assert!((purity(&bell_state(BellKind::PsiMinus)) - 1.0).abs() < 1e-12);
        assert!((purity(&maximally_mixed(&[2]).unwrap()) - 0.5).abs() < 1e-15);
        assert!((purity(&maximally_mixed(&[2, 2]).unwrap()) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn separable_mixtures_stay_ppt() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let mut terms = Vec::new();
            let k = rng.gen_range(1..4usize);
            let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            for &w in &weights {
                let factor = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let a: f64 = rng.gen_range(0.0..1.0);
                    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
                    let amps = [
                        c(a.sqrt(), 0.0),
                        c((1.0 - a).sqrt(), 0.0) * Complex64::new(0.0, phase).exp(),
                    ];
                    pure_state(&amps, &[2]).unwrap()
                };
                terms.push(MixtureTerm {
                    weight: w,
                    factors: vec![factor(&mut rng), factor(&mut rng)],
                });
            }
            let rho = separable_mixture(&terms).unwrap();
            assert!(is_ppt(&rho, 1).unwrap(), "separable mixture not PPT");
            assert!(negativity(&rho, 1).unwrap() <= 1e-12);
            assert!(concurrence(&rho).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn thermal_formula_spot_values() {
        let high = thermal_steady_concurrence(ThermalParams {
            n_bar: 0.0,
            omega_bar: 0.5,
            delta: 1.0,
        })
        .unwrap();
        assert!((high.raw - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((high.clamped - 1.0).abs() < 1e-15);
        assert!(high.out_of_range);

        let low = thermal_steady_concurrence(ThermalParams {
            n_bar: 1.0,
            omega_bar: 0.5,
            delta: 0.0,
        })
        .unwrap();
        assert!((low.raw + 4.0 / 9.0).abs() < 1e-12);
        assert!(low.clamped == 0.0);
        assert!(low.out_of_range);
    }

    #[test]
    fn thermal_raw_value_decreases_with_occupation() {
        let mut prev = f64::INFINITY;
        for i in 0..=50 {
            let n_bar = i as f64 * 0.1;
            let out = thermal_steady_concurrence(ThermalParams {
                n_bar,
                omega_bar: 0.5,
                delta: 0.4,
            })
            .unwrap();
            assert!(out.raw < prev, "raw not decreasing at n_bar = {n_bar}");
            prev = out.raw;
        }
    }

    #[test]
    fn thermal_death_sits_between_quarter_and_three_tenths() {
        let at = |n_bar| {
            thermal_steady_concurrence(ThermalParams {
                n_bar,
                omega_bar: 0.5,
                delta: 0.4,
            })
            .unwrap()
        };
        assert!(at(0.25).clamped > 0.0);
        assert!(at(0.30).clamped == 0.0);
    }

    #[test]
    fn thermal_rejects_negative_occupation() {
        assert!(matches!(
            thermal_steady_concurrence(ThermalParams {
                n_bar: -0.1,
                omega_bar: 0.5,
                delta: 0.0,
            }),
            Err(Error::ParamOutOfRange { name: "n_bar", .. })
        ));
    }
}
