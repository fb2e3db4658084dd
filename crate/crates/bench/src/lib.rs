//! Seeded fixtures for the benchmarks, so every run measures the same
//! workload on the same states.

use oqsim_core::qmat::ComplexMatrix;
use oqsim_core::states::DensityMatrix;
use oqsim_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

/// Full-rank random density matrix: normalized Gram matrix of a square
/// Gaussian matrix.
pub fn random_density(rng: &mut ChaCha8Rng, dims: &[usize]) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(normal(rng), normal(rng)));
    let m = g.matmul(&g.adjoint());
    let trace = m.trace().re;
    DensityMatrix::new(m.scaled(Complex64::new(1.0 / trace, 0.0)), dims.to_vec())
        .expect("normalized Gram matrix is a state")
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(normal(rng), normal(rng)));
    a.add(&a.adjoint()).scaled(Complex64::new(0.5, 0.0))
}
