//! Density-matrix construction and validation.
//!
//! A [`DensityMatrix`] bundles the matrix with its subsystem dimension list
//! and is only handed out after passing the validation gates (square shape,
//! Hermiticity, unit trace, positivity). Inputs that fail a gate are
//! rejected; nothing is renormalized on the caller's behalf.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, MAX_TENSOR_DIM};
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Vec<usize>,
}

/// One term of a separable mixture: a weight and one factor state per
/// subsystem.
#[derive(Clone, Debug)]
pub struct MixtureTerm {
    pub weight: f64,
    pub factors: Vec<DensityMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// Wire format for states: `{"dims": [...], "re": [[...]], "im": [[...]]}`
/// with row-major real and imaginary parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityMatrix {
    /// Validate `mat` against every state gate and take ownership.
    pub fn new(mat: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        validate(&mat, &dims)?;
        Ok(Self { mat, dims })
    }

    /// Skip the gates. Only for internal construction where validity holds
    /// by the algebra of the producing operation.
    pub(crate) fn from_parts_unchecked(mat: ComplexMatrix, dims: Vec<usize>) -> Self {
        Self { mat, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Flat Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Re-run the validation gates on the stored matrix.
    pub fn validate(&self) -> Result<()> {
        validate(&self.mat, &self.dims)
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mat = self.mat.partial_trace(&self.dims, keep)?;
        let dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let dims = if dims.is_empty() { vec![1] } else { dims };
        Ok(DensityMatrix::from_parts_unchecked(mat, dims))
    }
}

/// Check the state gates in order: dims consistency, finiteness,
/// Hermiticity, unit trace, positivity. The first violated gate is
/// reported with its measured magnitude.
pub fn validate(mat: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "density matrix must be square, got {}x{}",
            mat.rows(),
            mat.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(
            "subsystem dimensions must be nonempty and positive".into(),
        ));
    }
    let prod: usize = dims.iter().product();
    if prod != mat.rows() {
        return Err(Error::DimensionMismatch(format!(
            "dims {:?} give flat dimension {prod}, matrix is {}x{}",
            dims,
            mat.rows(),
            mat.cols()
        )));
    }
    mat.check_finite()?;
    let dev = mat.hermiticity_error();
    if dev > tol::HERMITICITY {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let trace = mat.trace();
    if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    let spec = mat.hermitian_spectrum()?;
    let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -tol::PSD {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
        });
    }
    Ok(())
}

/// |psi><psi| from amplitudes in the lexicographic basis.
pub fn pure_state(amplitudes: &[Complex64], dims: &[usize]) -> Result<DensityMatrix> {
    let prod: usize = dims.iter().product();
    if dims.is_empty() || prod != amplitudes.len() {
        return Err(Error::DimensionMismatch(format!(
            "dims {:?} do not match {} amplitudes",
            dims,
            amplitudes.len()
        )));
    }
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > tol::STATE_NORM {
        return Err(Error::NotNormalized { norm });
    }
    let n = amplitudes.len();
    let mat = ComplexMatrix::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj());
    Ok(DensityMatrix::from_parts_unchecked(mat, dims.to_vec()))
}

pub fn bell_state(kind: BellKind) -> DensityMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let p = Complex64::new(h, 0.0);
    let m = Complex64::new(-h, 0.0);
    let amps = match kind {
        BellKind::PhiPlus => [p, z, z, p],
        BellKind::PhiMinus => [p, z, z, m],
        BellKind::PsiPlus => [z, p, p, z],
        BellKind::PsiMinus => [z, p, m, z],
    };
    pure_state(&amps, &[2, 2]).expect("bell amplitudes are normalized")
}

/// (|00> + |11> + ... + |d-1,d-1>)/sqrt(d) on two d-level subsystems.
pub fn maximally_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 || d * d > MAX_TENSOR_DIM {
        return Err(Error::DimensionMismatch(format!(
            "maximally entangled pair needs 2 <= d with d^2 <= {MAX_TENSOR_DIM}, got d = {d}"
        )));
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..d {
        amps[k * d + k] = amp;
    }
    pure_state(&amps, &[d, d])
}

/// Convex combination of product states, sum_i w_i rho_i1 (x) rho_i2 (x) ...
pub fn separable_mixture(terms: &[MixtureTerm]) -> Result<DensityMatrix> {
    if terms.is_empty() {
        return Err(Error::WeightsInvalid("mixture has no terms".into()));
    }
    for (i, term) in terms.iter().enumerate() {
        if !term.weight.is_finite() || term.weight < 0.0 {
            return Err(Error::WeightsInvalid(format!(
                "weight {} of term {i} is negative or non-finite",
                term.weight
            )));
        }
    }
    let wsum: f64 = terms.iter().map(|t| t.weight).sum();
    if (wsum - 1.0).abs() > tol::WEIGHT_SUM {
        return Err(Error::WeightsInvalid(format!(
            "weights sum to {wsum}, must be 1 within {:e}",
            tol::WEIGHT_SUM
        )));
    }
    let dims: Vec<usize> = terms[0].factors.iter().map(DensityMatrix::dim).collect();
    if dims.is_empty() {
        return Err(Error::DimensionMismatch(
            "mixture terms need at least one factor".into(),
        ));
    }
    for (i, term) in terms.iter().enumerate() {
        let got: Vec<usize> = term.factors.iter().map(DensityMatrix::dim).collect();
        if got != dims {
            return Err(Error::DimensionMismatch(format!(
                "term {i} has factor dims {:?}, term 0 has {:?}",
                got, dims
            )));
        }
    }
    let flat: usize = dims.iter().product();
    if flat > MAX_TENSOR_DIM {
        return Err(Error::CapacityExceeded {
            dim: flat,
            max: MAX_TENSOR_DIM,
        });
    }
    let mut acc = ComplexMatrix::zeros(flat, flat);
    for term in terms {
        let mut prod = term.factors[0].matrix().clone();
        for f in &term.factors[1..] {
            prod = prod.tensor(f.matrix())?;
        }
        acc = acc.add(&prod.scaled(Complex64::new(term.weight, 0.0)));
    }
    DensityMatrix::new(acc, dims)
}

/// I/d over the listed subsystems.
pub fn maximally_mixed(dims: &[usize]) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(
            "subsystem dimensions must be nonempty and positive".into(),
        ));
    }
    let flat: usize = dims.iter().product();
    if flat > MAX_TENSOR_DIM {
        return Err(Error::CapacityExceeded {
            dim: flat,
            max: MAX_TENSOR_DIM,
        });
    }
    let w = Complex64::new(1.0 / flat as f64, 0.0);
    let mat = ComplexMatrix::from_diag(&vec![w; flat]);
    Ok(DensityMatrix::from_parts_unchecked(mat, dims.to_vec()))
}

impl From<DensityMatrix> for StateJson {
    fn from(state: DensityMatrix) -> Self {
        let n = state.dim();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let z = state.mat[(i, j)];
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        StateJson {
            dims: state.dims,
            re,
            im,
        }
    }
}

impl TryFrom<StateJson> for DensityMatrix {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        let n: usize = raw.dims.iter().product();
        let shape_ok = |m: &Vec<Vec<f64>>| m.len() == n && m.iter().all(|row| row.len() == n);
        if raw.dims.is_empty() || !shape_ok(&raw.re) || !shape_ok(&raw.im) {
            return Err(Error::DimensionMismatch(format!(
                "re/im blocks must both be {n}x{n} for dims {:?}",
                raw.dims
            )));
        }
        let mat = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(raw.re[i][j], raw.im[i][j]));
        DensityMatrix::new(mat, raw.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_state_has_expected_entries() {
        let rho = bell_state(BellKind::PhiPlus);
        assert_eq!(rho.dims(), &[2, 2]);
        assert!((rho.matrix()[(0, 3)].re - 0.5).abs() < 1e-15);
        assert!((rho.matrix()[(3, 3)].re - 0.5).abs() < 1e-15);
        assert!(rho.matrix()[(1, 1)].norm() < 1e-15);
        rho.validate().unwrap();
    }

    #[test]
    fn psi_minus_off_diagonal_is_negative() {
        let rho = bell_state(BellKind::PsiMinus);
        assert!((rho.matrix()[(1, 2)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn pure_state_rejects_unnormalized_amplitudes() {
        let amps = [c(1.0, 0.0), c(0.5, 0.0)];
        match pure_state(&amps, &[2]) {
            Err(Error::NotNormalized { norm }) => assert!((norm - 1.25f64.sqrt()).abs() < 1e-12),
            other => panic!("expected NotNormalized, got {other:?}"),
        }
    }

    #[test]
    fn validate_flags_trace_before_positivity() {
        let mat = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.1, 0.0)]);
        match validate(&mat, &[2]) {
            Err(Error::TraceNotOne { trace }) => assert!((trace - 1.1).abs() < 1e-12),
            other => panic!("expected TraceNotOne, got {other:?}"),
        }
    }

    #[test]
    fn validate_flags_indefinite_matrix() {
        let mat = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.6, 0.0)],
            vec![c(0.6, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        match validate(&mat, &[2]) {
            Err(Error::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.1).abs() < 1e-12)
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn validate_flags_hermiticity_first() {
        let mat = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.6, 0.0)],
            vec![c(0.1, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            validate(&mat, &[2]),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn separable_mixture_builds_werner_like_diagonal() {
        let up = pure_state(&[c(1.0, 0.0), c(0.0, 0.0)], &[2]).unwrap();
        let down = pure_state(&[c(0.0, 0.0), c(1.0, 0.0)], &[2]).unwrap();
        let rho = separable_mixture(&[
            MixtureTerm {
                weight: 0.5,
                factors: vec![up.clone(), up.clone()],
            },
            MixtureTerm {
                weight: 0.5,
                factors: vec![down.clone(), down.clone()],
            },
        ])
        .unwrap();
        assert!((rho.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((rho.matrix()[(3, 3)].re - 0.5).abs() < 1e-15);
        assert!(rho.matrix()[(0, 3)].norm() < 1e-15);
    }

    #[test]
    fn separable_mixture_rejects_negative_weight() {
        let up = pure_state(&[c(1.0, 0.0), c(0.0, 0.0)], &[2]).unwrap();
        let err = separable_mixture(&[
            MixtureTerm {
                weight: 1.5,
                factors: vec![up.clone()],
            },
            MixtureTerm {
                weight: -0.5,
                factors: vec![up],
            },
        ])
        .unwrap_err();
        assert!(matches!(err, Error::WeightsInvalid(_)));
    }

    #[test]
    fn separable_mixture_rejects_weight_sum_off_by_more_than_gate() {
        let up = pure_state(&[c(1.0, 0.0), c(0.0, 0.0)], &[2]).unwrap();
        let err = separable_mixture(&[MixtureTerm {
            weight: 1.0 + 1e-9,
            factors: vec![up],
        }])
        .unwrap_err();
        assert!(matches!(err, Error::WeightsInvalid(_)));
    }

    #[test]
    fn maximally_mixed_qubit_pair_is_quarter_identity() {
        let rho = maximally_mixed(&[2, 2]).unwrap();
        assert_eq!(rho.dim(), 4);
        for i in 0..4 {
            assert!((rho.matrix()[(i, i)].re - 0.25).abs() < 1e-15);
        }
        rho.validate().unwrap();
    }

    #[test]
    fn maximally_entangled_qutrit_amplitudes() {
        let rho = maximally_entangled(3).unwrap();
        let third = 1.0 / 3.0;
        for (i, j) in [(0, 4), (0, 8), (4, 8), (0, 0)] {
            assert!((rho.matrix()[(i, j)].re - third).abs() < 1e-15);
        }
    }

    #[test]
    fn json_round_trip_preserves_state() {
        let rho = bell_state(BellKind::PsiPlus);
        let text = serde_json::to_string(&rho).unwrap();
        assert!(text.contains("\"dims\":[2,2]"));
        let back: DensityMatrix = serde_json::from_str(&text).unwrap();
        assert!(back.matrix().sub(rho.matrix()).max_abs() < 1e-15);
        assert_eq!(back.dims(), rho.dims());
    }

    #[test]
    fn json_load_rejects_invalid_state() {
        let text =
            r#"{"dims": [2], "re": [[0.6, 0.0], [0.0, 0.6]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#;
        let got: std::result::Result<DensityMatrix, _> = serde_json::from_str(text);
        assert!(got.is_err());
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = bell_state(BellKind::PhiPlus);
        let reduced = rho.partial_trace(&[1]).unwrap();
        assert_eq!(reduced.dims(), &[2]);
        assert!((reduced.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!(reduced.matrix()[(0, 1)].norm() < 1e-15);
    }
}
