//! Time evolution: a Lindblad master equation with time-dependent
//! coefficients, a collision-model dephasing map, positional decoherence
//! under environmental scattering, a truncated two-oscillator exchange
//! model, and death-point location for entanglement measures.
//!
//! The master equation integrated here is
//!
//!   drho/dt = -i S(t) [sigma_+ sigma_-, rho]
//!             + gamma(t) (2 sigma_- rho sigma_+
//!                         - sigma_+ sigma_- rho - rho sigma_+ sigma_-)
//!
//! with sigma_- the supplied lowering operator and sigma_+ its adjoint.
//! For a qubit with sigma_- = |0><1| and constant gamma the solution is
//! rho_11(t) = rho_11(0) e^{-2 gamma t}, which matches the amplitude
//! damping channel at gamma_eff(t) = 1 - e^{-2 gamma t}.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures;
use crate::qmat::{ComplexMatrix, MAX_TENSOR_DIM};
use crate::states::DensityMatrix;
use crate::tol;

/// Scalar coefficient of the master equation as a function of time.
#[derive(Clone)]
pub enum TimeFunction {
    Constant(f64),
    /// Step function: value of the last breakpoint at or before t, first
    /// value before the first breakpoint. Breakpoints must ascend.
    Piecewise(Vec<(f64, f64)>),
    /// Linear interpolation over ascending sample times, clamped at both
    /// ends.
    Tabulated {
        times: Vec<f64>,
        values: Vec<f64>,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for TimeFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TimeFunction::Constant(v) => write!(f, "Constant({v})"),
            TimeFunction::Piecewise(points) => write!(f, "Piecewise({points:?})"),
            TimeFunction::Tabulated { times, values: _ } => {
                write!(
                    f,
                    "Tabulated({} samples, t in [{:?}, {:?}])",
                    times.len(),
                    times.first(),
                    times.last()
                )
            }
            TimeFunction::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl TimeFunction {
    pub fn piecewise(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ParamOutOfRange {
                name: "piecewise breakpoints",
                value: 0.0,
                range: "at least one breakpoint",
            });
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::ParamOutOfRange {
                name: "piecewise breakpoints",
                value: f64::NAN,
                range: "strictly ascending times",
            });
        }
        Ok(TimeFunction::Piecewise(points))
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "tabulated function needs matching times/values of length >= 2, got {}/{}",
                times.len(),
                values.len()
            )));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ParamOutOfRange {
                name: "tabulated times",
                value: f64::NAN,
                range: "strictly ascending",
            });
        }
        Ok(TimeFunction::Tabulated { times, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            TimeFunction::Constant(v) => *v,
            TimeFunction::Piecewise(points) => {
                let mut v = points[0].1;
                for &(ti, vi) in points {
                    if ti <= t {
                        v = vi;
                    } else {
                        break;
                    }
                }
                v
            }
            TimeFunction::Tabulated { times, values } => {
                if t <= times[0] {
                    return values[0];
                }
                if t >= *times.last().unwrap() {
                    return *values.last().unwrap();
                }
                let hi = times.partition_point(|&ti| ti <= t);
                let (t0, t1) = (times[hi - 1], times[hi]);
                let (v0, v1) = (values[hi - 1], values[hi]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
            TimeFunction::Custom(f) => f(t),
        }
    }
}

/// Master-equation model: frequency shift S(t), decay rate gamma(t), and
/// the lowering operator of the dissipation.
#[derive(Clone, Debug)]
pub struct LindbladModel {
    dim: usize,
    shift: TimeFunction,
    rate: TimeFunction,
    lowering: ComplexMatrix,
}

impl LindbladModel {
    pub fn new(shift: TimeFunction, rate: TimeFunction, lowering: ComplexMatrix) -> Result<Self> {
        if !lowering.is_square() || lowering.rows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "lowering operator must be square and nonempty, got {}x{}",
                lowering.rows(),
                lowering.cols()
            )));
        }
        lowering.check_finite()?;
        Ok(Self {
            dim: lowering.rows(),
            shift,
            rate,
            lowering,
        })
    }

    /// Two-level model with sigma_- = |0><1|.
    pub fn qubit(shift: TimeFunction, rate: TimeFunction) -> Self {
        let mut lowering = ComplexMatrix::zeros(2, 2);
        lowering[(0, 1)] = Complex64::new(1.0, 0.0);
        Self {
            dim: 2,
            shift,
            rate,
            lowering,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// States and named observable series along an integration run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub observables: Vec<(String, Vec<f64>)>,
}

impl Trajectory {
    /// Attach the observable series that make sense for the state shape:
    /// concurrence for [2, 2], negativity across the first cut for any
    /// multipartite state, coherence and purity always.
    fn from_states(times: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        let mut observables: Vec<(String, Vec<f64>)> = Vec::new();
        let dims = states
            .first()
            .map(|s| s.dims().to_vec())
            .unwrap_or_default();
        if dims == [2, 2] {
            let series: Result<Vec<f64>> = states.iter().map(measures::concurrence).collect();
            observables.push(("concurrence".into(), series?));
        }
        if dims.len() >= 2 {
            let series: Result<Vec<f64>> =
                states.iter().map(|s| measures::negativity(s, 1)).collect();
            observables.push(("negativity".into(), series?));
        }
        observables.push((
            "coherence".into(),
            states.iter().map(measures::l1_coherence).collect(),
        ));
        observables.push((
            "purity".into(),
            states.iter().map(measures::purity).collect(),
        ));
        Ok(Self {
            times,
            states,
            observables,
        })
    }
}

fn lindblad_rhs(
    shift: f64,
    rate: f64,
    lowering: &ComplexMatrix,
    raising: &ComplexMatrix,
    number: &ComplexMatrix,
    rho: &ComplexMatrix,
) -> ComplexMatrix {
    let num_rho = number.matmul(rho);
    let rho_num = rho.matmul(number);
    let jump = lowering.matmul(rho).matmul(raising);
    let mut out = num_rho.sub(&rho_num).scaled(Complex64::new(0.0, -shift));
    out = out.add(&jump.scaled(Complex64::new(2.0 * rate, 0.0)));
    out = out.add(&num_rho.add(&rho_num).scaled(Complex64::new(-rate, 0.0)));
    out
}

/// Fixed-step RK4 integration of the master equation from t = 0 to
/// `t_end`, recording the state after every step.
///
/// The step is gated by dt * max|gamma| <= `tol::STABILITY_GUARD` with the
/// rate sampled at every step boundary; trace drift beyond
/// `tol::TRACE_DRIFT` aborts the run rather than renormalizing.
pub fn evolve_master(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if rho0.dim() != model.dim {
        return Err(Error::DimensionMismatch(format!(
            "model dimension {} vs state dimension {}",
            model.dim,
            rho0.dim()
        )));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "dt",
            value: dt,
            range: "(0, inf)",
        });
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "t_end",
            value: t_end,
            range: "[0, inf)",
        });
    }

    let n_full = (t_end / dt).floor() as usize;
    let remainder = t_end - n_full as f64 * dt;
    let remainder = if remainder > 1e-12 * t_end.max(1.0) {
        Some(remainder)
    } else {
        None
    };

    let mut max_rate: f64 = 0.0;
    for i in 0..=n_full {
        max_rate = max_rate.max(model.rate.eval(i as f64 * dt).abs());
    }
    max_rate = max_rate.max(model.rate.eval(t_end).abs());
    if dt * max_rate > tol::STABILITY_GUARD {
        return Err(Error::StepTooLarge(dt * max_rate));
    }

    let raising = model.lowering.adjoint();
    let number = raising.matmul(&model.lowering);
    let step = |t: f64, h: f64, rho: &ComplexMatrix| -> ComplexMatrix {
        let f = |tau: f64, m: &ComplexMatrix| {
            lindblad_rhs(
                model.shift.eval(tau),
                model.rate.eval(tau),
                &model.lowering,
                &raising,
                &number,
                m,
            )
        };
        let k1 = f(t, rho);
        let k2 = f(
            t + 0.5 * h,
            &rho.add(&k1.scaled(Complex64::new(0.5 * h, 0.0))),
        );
        let k3 = f(
            t + 0.5 * h,
            &rho.add(&k2.scaled(Complex64::new(0.5 * h, 0.0))),
        );
        let k4 = f(t + h, &rho.add(&k3.scaled(Complex64::new(h, 0.0))));
        let mut incr = k1;
        incr = incr.add(&k2.scaled(Complex64::new(2.0, 0.0)));
        incr = incr.add(&k3.scaled(Complex64::new(2.0, 0.0)));
        incr = incr.add(&k4);
        rho.add(&incr.scaled(Complex64::new(h / 6.0, 0.0)))
    };

    let total_steps = n_full + remainder.map_or(0, |_| 1);
    let mut times = Vec::with_capacity(total_steps + 1);
    let mut states = Vec::with_capacity(total_steps + 1);
    times.push(0.0);
    states.push(rho0.clone());

    let mut rho = rho0.matrix().clone();
    let mut t = 0.0;
    for i in 0..total_steps {
        let h = if i < n_full {
            dt
        } else {
            remainder.expect("extra step only exists with a remainder")
        };
        rho = step(t, h, &rho);
        t = if i + 1 == total_steps {
            t_end
        } else {
            (i + 1) as f64 * dt
        };
        let drift = (rho.trace().re - 1.0).abs().max(rho.trace().im.abs());
        if drift > tol::TRACE_DRIFT {
            return Err(Error::TraceDrift {
                t,
                drift,
                tol: tol::TRACE_DRIFT,
            });
        }
        times.push(t);
        states.push(DensityMatrix::from_parts_unchecked(
            rho.clone(),
            rho0.dims().to_vec(),
        ));
    }
    Trajectory::from_states(times, states)
}

/// Pointer-basis collision model: branch unitaries S_n act on a fresh
/// environment copy prepared in `env_in`, one per system pointer state.
#[derive(Clone, Debug)]
pub struct CollisionModel {
    branches: Vec<ComplexMatrix>,
    env_in: Vec<Complex64>,
}

impl CollisionModel {
    pub fn new(branches: Vec<ComplexMatrix>, env_in: Vec<Complex64>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::DimensionMismatch(
                "collision model needs one branch unitary per pointer state".into(),
            ));
        }
        let env_dim = env_in.len();
        let norm = env_in.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        for (index, s) in branches.iter().enumerate() {
            if !s.is_square() || s.rows() != env_dim {
                return Err(Error::DimensionMismatch(format!(
                    "branch {index} must be {env_dim}x{env_dim}, got {}x{}",
                    s.rows(),
                    s.cols()
                )));
            }
            s.check_finite()?;
            let dev = s
                .adjoint()
                .matmul(s)
                .sub(&ComplexMatrix::identity(env_dim))
                .max_abs();
            if dev > tol::UNITARITY {
                return Err(Error::NotUnitary {
                    index,
                    deviation: dev,
                });
            }
        }
        Ok(Self { branches, env_in })
    }

    /// Number of pointer states, i.e. the system dimension this model
    /// dephases.
    pub fn pointer_count(&self) -> usize {
        self.branches.len()
    }

    /// Overlap <env_in| S_n^dag S_m |env_in> that scales rho_mn per
    /// collision.
    pub fn factor(&self, m: usize, n: usize) -> Result<Complex64> {
        let count = self.branches.len();
        if m >= count || n >= count {
            return Err(Error::DimensionMismatch(format!(
                "pointer indices ({m}, {n}) out of range for {count} branches"
            )));
        }
        let moved = self.branches[m].mul_vec(&self.env_in);
        let reference = self.branches[n].mul_vec(&self.env_in);
        Ok(reference
            .iter()
            .zip(&moved)
            .map(|(r, v)| r.conj() * v)
            .sum())
    }
}

/// Overlap factor between pointer states `m` and `n` after one collision.
pub fn collision_factor(model: &CollisionModel, m: usize, n: usize) -> Result<Complex64> {
    model.factor(m, n)
}

fn complex_pow(z: Complex64, mut k: u32) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// Apply `k` collisions: rho_mn -> rho_mn * factor(m, n)^k, populations
/// untouched by the pointer-basis structure.
pub fn collision_apply(
    model: &CollisionModel,
    rho: &DensityMatrix,
    k: u32,
) -> Result<DensityMatrix> {
    let count = model.pointer_count();
    if rho.dim() != count {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs {} pointer branches",
            rho.dim(),
            count
        )));
    }
    let mut out = rho.matrix().clone();
    for m in 0..count {
        for n in 0..count {
            if m == n {
                continue;
            }
            let f = complex_pow(model.factor(m, n)?, k);
            out[(m, n)] = rho.matrix()[(m, n)] * f;
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(
        out,
        rho.dims().to_vec(),
    ))
}

/// Isotropic scattering environment: number density `n0`, particle speed
/// `v`, s-wave scattering amplitude `f0`, dominant wavenumber `q0`.
#[derive(Clone, Copy, Debug)]
pub struct ScatteringEnvironment {
    pub n0: f64,
    pub v: f64,
    pub f0: f64,
    pub q0: f64,
}

impl ScatteringEnvironment {
    pub fn new(n0: f64, v: f64, f0: f64, q0: f64) -> Result<Self> {
        for (name, value) in [("n0", n0), ("v", v), ("f0", f0), ("q0", q0)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::ParamOutOfRange {
                    name: match name {
                        "n0" => "n0",
                        "v" => "v",
                        "f0" => "f0",
                        _ => "q0",
                    },
                    value,
                    range: "[0, inf)",
                });
            }
        }
        Ok(Self { n0, v, f0, q0 })
    }
}

/// 1 - sinc^2(x), evaluated by series near zero where the direct form
/// cancels.
fn one_minus_sinc_sq(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-3 {
        let x2 = x * x;
        x2 / 3.0 - 2.0 * x2 * x2 / 45.0 + x2 * x2 * x2 * (2.0 / 315.0)
    } else {
        let s = x.sin() / x;
        1.0 - s * s
    }
}

/// Separation-dependent decoherence rate of the scattering environment:
///
///   F(dx) = 4 pi n0 v f0^2 (1 - sinc^2(q0 |dx|))
///
/// The rate vanishes quadratically at small separations and saturates at
/// 4 pi n0 v f0^2 once q0 |dx| >> 1.
pub fn spatial_decoherence_factor(env: &ScatteringEnvironment, dx: f64) -> f64 {
    let prefactor = 4.0 * std::f64::consts::PI * env.n0 * env.v * env.f0 * env.f0;
    prefactor * one_minus_sinc_sq(env.q0 * dx)
}

/// Decay of positional coherences on a grid: rho_ij picks up
/// exp(-F(x_i - x_j) t); populations are exactly preserved since F(0) = 0.
pub fn evolve_positional(
    rho0: &DensityMatrix,
    grid: &[f64],
    env: &ScatteringEnvironment,
    t: f64,
) -> Result<DensityMatrix> {
    if grid.len() != rho0.dim() {
        return Err(Error::DimensionMismatch(format!(
            "grid has {} points, state dimension is {}",
            grid.len(),
            rho0.dim()
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    let n = grid.len();
    let mut out = rho0.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let rate = spatial_decoherence_factor(env, grid[i] - grid[j]);
            out[(i, j)] = rho0.matrix()[(i, j)] * (-rate * t).exp();
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(
        out,
        rho0.dims().to_vec(),
    ))
}

/// Two coupled truncated oscillators exchanging one excitation:
///
///   H = omega_c a^dag a (x) I + I (x) omega b^dag b
///       + beta (a^dag (x) b + a (x) b^dag)
///
/// on Fock spaces clipped at occupation `n_max`.
#[derive(Clone, Copy, Debug)]
pub struct EMOscillatorModel {
    pub omega_c: f64,
    pub omega: f64,
    pub beta: f64,
    pub n_max: usize,
}

/// Result of a detuning sweep: negativity over the time grid per detuning,
/// its per-detuning maximum, and the worst excitation-conservation error
/// seen anywhere in the sweep.
#[derive(Clone, Debug)]
pub struct EmSweep {
    pub detunings: Vec<f64>,
    pub times: Vec<f64>,
    pub negativity: Vec<Vec<f64>>,
    pub max_negativity: Vec<f64>,
    pub conservation_error: f64,
}

impl EMOscillatorModel {
    pub fn new(omega_c: f64, omega: f64, beta: f64, n_max: usize) -> Result<Self> {
        for (name, value) in [("omega_c", omega_c), ("omega", omega), ("beta", beta)] {
            if !value.is_finite() {
                return Err(Error::ParamOutOfRange {
                    name: match name {
                        "omega_c" => "omega_c",
                        "omega" => "omega",
                        _ => "beta",
                    },
                    value,
                    range: "finite",
                });
            }
        }
        let dim = (n_max + 1) * (n_max + 1);
        if n_max < 1 || dim > MAX_TENSOR_DIM {
            return Err(Error::CapacityExceeded {
                dim,
                max: MAX_TENSOR_DIM,
            });
        }
        Ok(Self {
            omega_c,
            omega,
            beta,
            n_max,
        })
    }
}

fn lowering_op(d: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Sweep the oscillator frequency over `detunings` (omega_c = omega +
/// detuning), evolving |1, 0> exactly through the spectral decomposition
/// and recording negativity across the oscillator/field cut on `times`.
///
/// Populations stranded on clipped-sector boundary states (|j, k> with
/// j = n_max or k = n_max while j + k > n_max) abort the run as a
/// truncation leak.
pub fn em_resonance_sweep(
    model: &EMOscillatorModel,
    detunings: &[f64],
    times: &[f64],
) -> Result<EmSweep> {
    if detunings.is_empty() || times.is_empty() {
        return Err(Error::DimensionMismatch(
            "detuning and time grids must be nonempty".into(),
        ));
    }
    let d = model.n_max + 1;
    let dim = d * d;
    let a = lowering_op(d);
    let number = a.adjoint().matmul(&a);
    let id = ComplexMatrix::identity(d);
    let num_osc = number.tensor(&id)?;
    let num_field = id.tensor(&number)?;
    let exchange = {
        let up = a.adjoint().tensor(&a)?;
        up.add(&up.adjoint())
    };

    let mut psi0 = vec![Complex64::new(0.0, 0.0); dim];
    psi0[d] = Complex64::new(1.0, 0.0); // |1, 0>

    let mut negativity = Vec::with_capacity(detunings.len());
    let mut max_negativity = Vec::with_capacity(detunings.len());
    let mut conservation_error: f64 = 0.0;

    for &detuning in detunings {
        let omega_c = model.omega + detuning;
        let mut h = num_osc.scaled(Complex64::new(omega_c, 0.0));
        h = h.add(&num_field.scaled(Complex64::new(model.omega, 0.0)));
        h = h.add(&exchange.scaled(Complex64::new(model.beta, 0.0)));
        let spec = h.hermitian_spectrum()?;
        let coeff = spec.vectors.adjoint().mul_vec(&psi0);

        let mut series = Vec::with_capacity(times.len());
        let mut best: f64 = 0.0;
        for &t in times {
            let phased: Vec<Complex64> = coeff
                .iter()
                .zip(&spec.eigenvalues)
                .map(|(&c, &l)| c * Complex64::new(0.0, -l * t).exp())
                .collect();
            let psi = spec.vectors.mul_vec(&phased);

            let mut leak = 0.0;
            let mut excitation = 0.0;
            for j in 0..d {
                for k in 0..d {
                    let p = psi[j * d + k].norm_sqr();
                    if (j == model.n_max || k == model.n_max) && j + k > model.n_max {
                        leak += p;
                    }
                    excitation += (j + k) as f64 * p;
                }
            }
            if leak > tol::TRUNCATION_LEAK {
                return Err(Error::TruncationLeak {
                    population: leak,
                    tol: tol::TRUNCATION_LEAK,
                });
            }
            conservation_error = conservation_error.max((excitation - 1.0).abs());

            let rho = ComplexMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj());
            let state = DensityMatrix::from_parts_unchecked(rho, vec![d, d]);
            let neg = measures::negativity(&state, 1)?;
            best = best.max(neg);
            series.push(neg);
        }
        negativity.push(series);
        max_negativity.push(best);
    }
    Ok(EmSweep {
        detunings: detunings.to_vec(),
        times: times.to_vec(),
        negativity,
        max_negativity,
        conservation_error,
    })
}

/// Which measure `find_esd` tracks along the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsdMeasure {
    Concurrence,
    /// Negativity across the cut after the first tensor factor.
    Negativity,
}

/// Smallest parameter in [lo, hi] where `f` first drops to zero
/// (<= `tol::MEASURE_ZERO`), located by a 64-interval scan and bisection
/// to `tol::ESD_RESOLUTION`. Returns None if the scan never sees zero;
/// rejects families that already start at zero.
pub fn find_first_zero(f: impl Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<Option<f64>> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::ParamOutOfRange {
            name: "interval",
            value: lo,
            range: "finite lo < hi",
        });
    }
    const SCAN_INTERVALS: usize = 64;
    let x_at = |i: usize| lo + (hi - lo) * i as f64 / SCAN_INTERVALS as f64;

    let first = f(lo)?;
    if first <= tol::MEASURE_ZERO {
        return Err(Error::NotEntangledAtStart { value: first });
    }
    let mut bracket = None;
    for i in 1..=SCAN_INTERVALS {
        if f(x_at(i))? <= tol::MEASURE_ZERO {
            bracket = Some((x_at(i - 1), x_at(i)));
            break;
        }
    }
    let (mut a, mut b) = match bracket {
        Some(pair) => pair,
        None => return Ok(None),
    };
    while b - a > tol::ESD_RESOLUTION {
        let mid = 0.5 * (a + b);
        if f(mid)? <= tol::MEASURE_ZERO {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// Death point of an entanglement measure along a state family.
pub fn find_esd(
    family: impl Fn(f64) -> Result<DensityMatrix>,
    measure: EsdMeasure,
    lo: f64,
    hi: f64,
) -> Result<Option<f64>> {
    find_first_zero(
        |x| {
            let rho = family(x)?;
            match measure {
                EsdMeasure::Concurrence => measures::concurrence(&rho),
                EsdMeasure::Negativity => measures::negativity(&rho, 1),
            }
        },
        lo,
        hi,
    )
}
