//! Kraus noise channels.
//!
//! A channel is a list of operators {K_i} with sum_i K_i^dag K_i = I, and
//! acts as rho -> sum_i K_i rho K_i^dag. Completeness is gated at
//! construction (`tol::KRAUS_COMPLETENESS`), so application never needs to
//! recheck trace preservation.
//!
//! Built-in families, all on the convention that basis index 0 is the
//! ground level:
//!
//! * amplitude damping, gamma in [0, 1]:
//!   E0 = [[1, 0], [0, sqrt(1-gamma)]], E1 = [[0, sqrt(gamma)], [0, 0]]
//! * phase damping, lambda in [0, 1]:
//!   E0 = diag(1, sqrt(1-lambda)), E1 = diag(0, sqrt(lambda))
//! * depolarizing, p in [0, 1]:
//!   {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}
//! * correlated amplitude damping on a qutrit, d1, d2 in [0, 1]:
//!   E0 = diag(1, sqrt(1-d1), sqrt(1-d2)), E1 = sqrt(d1)|0><1|,
//!   E2 = sqrt(d2)|0><2|

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;
use crate::states::DensityMatrix;
use crate::tol;

#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    dim: usize,
}

impl KrausChannel {
    /// Build a channel from explicit Kraus operators, gating completeness.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match operators.first() {
            Some(k) => k.rows(),
            None => {
                return Err(Error::DimensionMismatch(
                    "channel needs at least one Kraus operator".into(),
                ))
            }
        };
        for k in &operators {
            if !k.is_square() || k.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operators must all be {dim}x{dim}, got {}x{}",
                    k.rows(),
                    k.cols()
                )));
            }
            k.check_finite()?;
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for k in &operators {
            sum = sum.add(&k.adjoint().matmul(k));
        }
        let defect = sum.sub(&ComplexMatrix::identity(dim)).max_abs();
        if defect > tol::KRAUS_COMPLETENESS {
            return Err(Error::NotUnitary {
                index: 0,
                deviation: defect,
            });
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

fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::ParamOutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(value)
}

pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    let g = check_unit_interval("gamma", gamma)?;
    let z = Complex64::new(0.0, 0.0);
    let e0 = ComplexMatrix::from_diag(&[
        Complex64::new(1.0, 0.0),
        Complex64::new((1.0 - g).sqrt(), 0.0),
    ]);
    let e1 = ComplexMatrix::from_rows(&[vec![z, Complex64::new(g.sqrt(), 0.0)], vec![z, z]])?;
    KrausChannel::new(vec![e0, e1])
}

pub fn phase_damping(lambda: f64) -> Result<KrausChannel> {
    let l = check_unit_interval("lambda", lambda)?;
    let e0 = ComplexMatrix::from_diag(&[
        Complex64::new(1.0, 0.0),
        Complex64::new((1.0 - l).sqrt(), 0.0),
    ]);
    let e1 = ComplexMatrix::from_diag(&[Complex64::new(0.0, 0.0), Complex64::new(l.sqrt(), 0.0)]);
    KrausChannel::new(vec![e0, e1])
}

pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    let p = check_unit_interval("p", p)?;
    let w0 = Complex64::new((1.0 - p).sqrt(), 0.0);
    let w = (p / 3.0).sqrt();
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(w, 0.0);
    let k0 = ComplexMatrix::identity(2).scaled(w0);
    let kx = ComplexMatrix::from_rows(&[vec![z, one], vec![one, z]])?;
    let ky = ComplexMatrix::from_rows(&[
        vec![z, Complex64::new(0.0, -w)],
        vec![Complex64::new(0.0, w), z],
    ])?;
    let kz = ComplexMatrix::from_diag(&[one, Complex64::new(-w, 0.0)]);
    KrausChannel::new(vec![k0, kx, ky, kz])
}

/// Qutrit damping with both excited levels decaying into the shared ground
/// level at their own strengths.
pub fn correlated_amplitude_damping(d1: f64, d2: f64) -> Result<KrausChannel> {
    let d1 = check_unit_interval("d1", d1)?;
    let d2 = check_unit_interval("d2", d2)?;
    let e0 = ComplexMatrix::from_diag(&[
        Complex64::new(1.0, 0.0),
        Complex64::new((1.0 - d1).sqrt(), 0.0),
        Complex64::new((1.0 - d2).sqrt(), 0.0),
    ]);
    let mut e1 = ComplexMatrix::zeros(3, 3);
    e1[(0, 1)] = Complex64::new(d1.sqrt(), 0.0);
    let mut e2 = ComplexMatrix::zeros(3, 3);
    e2[(0, 2)] = Complex64::new(d2.sqrt(), 0.0);
    KrausChannel::new(vec![e0, e1, e2])
}

/// rho -> sum_i K_i rho K_i^dag on the whole state.
pub fn apply(channel: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if channel.dim != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, state has {}",
            channel.dim,
            rho.dim()
        )));
    }
    let out = conjugate_sum(&channel.operators, rho.matrix());
    Ok(DensityMatrix::from_parts_unchecked(
        out,
        rho.dims().to_vec(),
    ))
}

/// Apply the channel to one tensor factor, identity on the rest.
pub fn apply_to_subsystem(
    channel: &KrausChannel,
    rho: &DensityMatrix,
    target: usize,
) -> Result<DensityMatrix> {
    let lifted = lift_operators(&channel.operators, rho.dims(), target, channel.dim)?;
    let out = conjugate_sum(&lifted, rho.matrix());
    Ok(DensityMatrix::from_parts_unchecked(
        out,
        rho.dims().to_vec(),
    ))
}

/// Channel equal to running `first` and then `second`; Kraus list is the
/// pairwise product, so the operator count multiplies.
pub fn compose(first: &KrausChannel, second: &KrausChannel) -> Result<KrausChannel> {
    if first.dim != second.dim {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose channels of dimension {} and {}",
            first.dim, second.dim
        )));
    }
    let mut ops = Vec::with_capacity(first.operators.len() * second.operators.len());
    for b in &second.operators {
        for a in &first.operators {
            ops.push(b.matmul(a));
        }
    }
    KrausChannel::new(ops)
}

pub(crate) fn conjugate_sum(operators: &[ComplexMatrix], m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for k in operators {
        out = out.add(&k.matmul(m).matmul(&k.adjoint()));
    }
    out
}

/// I (x) ... (x) K (x) ... (x) I with K at position `target`.
pub(crate) fn lift_operators(
    operators: &[ComplexMatrix],
    dims: &[usize],
    target: usize,
    op_dim: usize,
) -> Result<Vec<ComplexMatrix>> {
    if target >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "target {target} out of range for {} subsystems",
            dims.len()
        )));
    }
    if dims[target] != op_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator acts on dimension {op_dim}, subsystem {target} has {}",
            dims[target]
        )));
    }
    let left: usize = dims[..target].iter().product();
    let right: usize = dims[target + 1..].iter().product();
    let il = ComplexMatrix::identity(left);
    let ir = ComplexMatrix::identity(right);
    operators
        .iter()
        .map(|k| il.tensor(k)?.tensor(&ir))
        .collect()
}
