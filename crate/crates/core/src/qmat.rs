//! Dense complex matrices and the linear-algebra kernel the rest of the
//! crate is built on.
//!
//! Storage is row major over `Complex64`. Composite systems carry a
//! dimension list `dims` whose leftmost entry is subsystem 0; flat basis
//! indices run lexicographically, so for `dims = [2, 3]` the order is
//! |00>, |01>, |02>, |10>, |11>, |12>.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Hard cap on the flat dimension a tensor product may reach.
pub const MAX_TENSOR_DIM: usize = 1024;

const MAX_JACOBI_SWEEPS: usize = 64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order, unit eigenvector for `eigenvalues[j]` in column `j` of `vectors`.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row list".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_diag(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max |m_ij - conj(m_ji)| over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Kronecker product, self on the left (slow index).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let dim = rows.max(cols);
        if dim > MAX_TENSOR_DIM {
            return Err(Error::CapacityExceeded {
                dim,
                max: MAX_TENSOR_DIM,
            });
        }
        let mut out = Self::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self[(ia, ja)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out[(ia * other.rows + ib, ja * other.cols + jb)] = a * other[(ib, jb)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace out every subsystem not listed in `keep`.
    ///
    /// `keep` must be strictly increasing; the result keeps the original
    /// ordering of the surviving factors. An empty `keep` reduces to the
    /// 1x1 matrix holding the trace.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let strides = subsystem_strides(self, dims)?;
        let n = dims.len();
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DimensionMismatch(
                "keep list must be strictly increasing".into(),
            ));
        }
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::DimensionMismatch(format!(
                "keep index out of range for {n} subsystems"
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
        let kept_offsets = enumerate_offsets(dims, &strides, keep);
        let traced_offsets = enumerate_offsets(dims, &strides, &traced);

        let kdim = kept_offsets.len();
        let mut out = Self::zeros(kdim, kdim);
        for (i, &ri) in kept_offsets.iter().enumerate() {
            for (j, &cj) in kept_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &e in &traced_offsets {
                    acc += self[(ri + e, cj + e)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Transpose the indices of one subsystem, leaving the rest alone.
    pub fn partial_transpose(&self, dims: &[usize], subsystem: usize) -> Result<Self> {
        let strides = subsystem_strides(self, dims)?;
        if subsystem >= dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem {subsystem} out of range for {} subsystems",
                dims.len()
            )));
        }
        let d = dims[subsystem];
        let stride = strides[subsystem];
        let dim = self.rows;
        let mut out = Self::zeros(dim, dim);
        for r in 0..dim {
            let ri = (r / stride) % d;
            for c in 0..dim {
                let ci = (c / stride) % d;
                let r2 = r - ri * stride + ci * stride;
                let c2 = c - ci * stride + ri * stride;
                out[(r2, c2)] = self[(r, c)];
            }
        }
        Ok(out)
    }

    /// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi.
    ///
    /// Each pivot (p, q) first factors the phase out of a_pq, reducing the
    /// 2x2 block to a real symmetric one, then applies the classic rotation
    /// that annihilates it. Entry is gated on `tol::HERMITICITY`; the
    /// matrix is symmetrized before iterating so admitted asymmetry below
    /// the gate cannot bias the result.
    pub fn hermitian_spectrum(&self) -> Result<SpectrumResult> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "eigensolver needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        self.check_finite()?;
        let dev = self.hermiticity_error();
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }

        let n = self.rows;
        let mut a = Self::from_fn(n, n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)].conj()));
        let mut v = Self::identity(n);
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let stop = (n as f64 * f64::EPSILON * scale).powi(2);

        let mut converged = false;
        for _ in 0..MAX_JACOBI_SWEEPS {
            if off_diag_sq(&a) <= stop {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let g = apq.norm();
                    if g == 0.0 {
                        continue;
                    }
                    let phase = apq / g;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (2.0 * g);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let ph_c = phase.conj();

                    // A <- R^dag A R with R[p][p]=c, R[p][q]=s,
                    // R[q][p]=-s e^{-i phi}, R[q][q]=c e^{-i phi}.
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c - akq * s * ph_c;
                        a[(k, q)] = akp * s + akq * c * ph_c;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c - aqk * s * phase;
                        a[(q, k)] = apk * s + aqk * c * phase;
                    }
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * s * ph_c;
                        v[(k, q)] = vkp * s + vkq * c * ph_c;
                    }
                }
            }
        }
        if !converged && off_diag_sq(&a) > stop {
            return Err(Error::NoConvergence {
                context: "jacobi eigensolver",
            });
        }

        let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
        let mut vectors = Self::zeros(n, n);
        for (newc, &oldc) in order.iter().enumerate() {
            for k in 0..n {
                vectors[(k, newc)] = v[(k, oldc)];
            }
        }
        Ok(SpectrumResult {
            eigenvalues,
            vectors,
        })
    }

    /// Trace norm of a Hermitian matrix: sum of |eigenvalue|.
    pub fn trace_norm(&self) -> Result<f64> {
        let spec = self.hermitian_spectrum()?;
        Ok(spec.eigenvalues.iter().map(|l| l.abs()).sum())
    }

    /// exp(-i H t) for Hermitian H, via the spectral decomposition.
    pub fn unitary_exp(&self, t: f64) -> Result<Self> {
        let spec = self.hermitian_spectrum()?;
        let n = self.rows;
        let mut w = spec.vectors.clone();
        for (j, &lambda) in spec.eigenvalues.iter().enumerate() {
            let ph = Complex64::new(0.0, -lambda * t).exp();
            for k in 0..n {
                w[(k, j)] *= ph;
            }
        }
        Ok(w.matmul(&spec.vectors.adjoint()))
    }
}

fn off_diag_sq(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn subsystem_strides(m: &ComplexMatrix, dims: &[usize]) -> Result<Vec<usize>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(
            "subsystem dimensions must be nonempty and positive".into(),
        ));
    }
    let prod: usize = dims.iter().product();
    if prod != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "dims {:?} give flat dimension {prod}, matrix is {}x{}",
            dims,
            m.rows(),
            m.cols()
        )));
    }
    let n = dims.len();
    let mut strides = vec![1usize; n];
    for s in (0..n - 1).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    Ok(strides)
}

/// Flat-index offsets of every multi-index over the listed subsystems,
/// enumerated lexicographically.
fn enumerate_offsets(dims: &[usize], strides: &[usize], subsystems: &[usize]) -> Vec<usize> {
    let total: usize = subsystems.iter().map(|&s| dims[s]).product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut off = 0;
        for &s in subsystems.iter().rev() {
            off += (idx % dims[s]) * strides[s];
            idx /= dims[s];
        }
        out.push(off);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap()
    }

    fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)])
    }

    #[test]
    fn tensor_pauli_entry_matches_hand_value() {
        let m = pauli_x().tensor(&pauli_z()).unwrap();
        // row (0,1) -> 1, col (1,1) -> 3
        assert_eq!(m[(1, 3)], c(-1.0, 0.0));
        assert_eq!(m[(0, 2)], c(1.0, 0.0));
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn tensor_is_associative() {
        let a = pauli_x();
        let b = pauli_y();
        let d = pauli_z();
        let left = a.tensor(&b).unwrap().tensor(&d).unwrap();
        let right = a.tensor(&b.tensor(&d).unwrap()).unwrap();
        assert!(left.sub(&right).max_abs() == 0.0);
    }

    #[test]
    fn tensor_capacity_is_enforced() {
        let big = ComplexMatrix::identity(64);
        let also_big = ComplexMatrix::identity(32);
        let err = big.tensor(&also_big).unwrap_err();
        assert_eq!(
            err,
            Error::CapacityExceeded {
                dim: 2048,
                max: MAX_TENSOR_DIM
            }
        );
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        // rho_a (x) rho_b, trace out either side
        let rho_a = ComplexMatrix::from_rows(&[
            vec![c(0.7, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.3, 0.0)],
        ])
        .unwrap();
        let rho_b = ComplexMatrix::from_diag(&[c(0.25, 0.0), c(0.25, 0.0), c(0.5, 0.0)]);
        let full = rho_a.tensor(&rho_b).unwrap();
        let back_a = full.partial_trace(&[2, 3], &[0]).unwrap();
        let back_b = full.partial_trace(&[2, 3], &[1]).unwrap();
        assert!(back_a.sub(&rho_a).max_abs() < 1e-15);
        assert!(back_b.sub(&rho_b).max_abs() < 1e-15);
    }

    #[test]
    fn partial_trace_keep_all_is_identity_map() {
        let m = pauli_x().tensor(&pauli_y()).unwrap();
        let kept = m.partial_trace(&[2, 2], &[0, 1]).unwrap();
        assert!(kept.sub(&m).max_abs() == 0.0);
    }

    #[test]
    fn partial_trace_keep_none_gives_trace() {
        let m = ComplexMatrix::from_diag(&[c(0.5, 0.0), c(0.25, 0.0), c(0.25, 0.0), c(0.0, 0.0)]);
        let t = m.partial_trace(&[2, 2], &[]).unwrap();
        assert_eq!(t.rows(), 1);
        assert!((t[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(6);
        assert!(matches!(
            m.partial_trace(&[2, 2], &[0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let m = ComplexMatrix::from_fn(6, 6, |i, j| c((i * 6 + j) as f64, (i as f64) - (j as f64)));
        let pt = m.partial_transpose(&[2, 3], 1).unwrap();
        let back = pt.partial_transpose(&[2, 3], 1).unwrap();
        assert!(back.sub(&m).max_abs() == 0.0);
    }

    #[test]
    fn partial_transpose_on_both_factors_is_full_transpose() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64, (i * j) as f64));
        let pt = m
            .partial_transpose(&[2, 2], 0)
            .unwrap()
            .partial_transpose(&[2, 2], 1)
            .unwrap();
        assert!(pt.sub(&m.transpose()).max_abs() == 0.0);
    }

    #[test]
    fn bell_partial_transpose_spectrum_is_half_triple_and_minus_half() {
        // |phi+><phi+| entries 1/2 at corners of the (00,11) block
        let mut rho = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho[(i, j)] = c(0.5, 0.0);
        }
        let pt = rho.partial_transpose(&[2, 2], 0).unwrap();
        let spec = pt.hermitian_spectrum().unwrap();
        let expect = [0.5, 0.5, 0.5, -0.5];
        for (got, want) in spec.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        assert!((pt.trace_norm().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_pauli_y_is_plus_minus_one() {
        let spec = pauli_y().hermitian_spectrum().unwrap();
        assert!((spec.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((spec.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectrum_reconstructs_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &n in &[2usize, 3, 5, 8, 16] {
            let g = ComplexMatrix::from_fn(n, n, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = g.add(&g.adjoint()).scaled(c(0.5, 0.0));
            let spec = h.hermitian_spectrum().unwrap();
            let lambda = ComplexMatrix::from_diag(
                &spec
                    .eigenvalues
                    .iter()
                    .map(|&l| c(l, 0.0))
                    .collect::<Vec<_>>(),
            );
            let rebuilt = spec.vectors.matmul(&lambda).matmul(&spec.vectors.adjoint());
            let scale = h.max_abs().max(1.0);
            assert!(
                rebuilt.sub(&h).max_abs() <= 1e-10 * scale,
                "reconstruction off by {} at n = {n}",
                rebuilt.sub(&h).max_abs()
            );
            let vtv = spec.vectors.adjoint().matmul(&spec.vectors);
            assert!(
                vtv.sub(&ComplexMatrix::identity(n)).max_abs() <= 1e-12,
                "eigenvectors not unitary at n = {n}"
            );
            let mut sorted = spec.eigenvalues.clone();
            sorted.sort_by(|a, b| b.total_cmp(a));
            assert_eq!(sorted, spec.eigenvalues);
        }
    }

    #[test]
    fn spectrum_handles_degenerate_eigenvalues() {
        let h = ComplexMatrix::from_diag(&[c(0.25, 0.0), c(0.25, 0.0), c(0.25, 0.0), c(0.25, 0.0)]);
        let spec = h.hermitian_spectrum().unwrap();
        for l in &spec.eigenvalues {
            assert!((l - 0.25).abs() < 1e-15);
        }
        let vtv = spec.vectors.adjoint().matmul(&spec.vectors);
        assert!(vtv.sub(&ComplexMatrix::identity(4)).max_abs() < 1e-14);
    }

    #[test]
    fn spectrum_rejects_non_hermitian_input() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        match m.hermitian_spectrum() {
            Err(Error::NotHermitian { deviation }) => assert!((deviation - 1.0).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn spectrum_rejects_non_finite_entries() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(
            m.hermitian_spectrum(),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn unitary_exp_of_pauli_z_gives_phases() {
        let t = 0.37;
        let u = pauli_z().unitary_exp(t).unwrap();
        assert!((u[(0, 0)] - Complex64::new(0.0, -t).exp()).norm() < 1e-14);
        assert!((u[(1, 1)] - Complex64::new(0.0, t).exp()).norm() < 1e-14);
        assert!(u[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn unitary_exp_is_unitary_and_composes() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.3, 0.1)],
            vec![c(0.3, -0.1), c(-0.5, 0.0)],
        ])
        .unwrap();
        let u1 = h.unitary_exp(0.4).unwrap();
        let u2 = h.unitary_exp(0.6).unwrap();
        let u3 = h.unitary_exp(1.0).unwrap();
        assert!(
            u1.adjoint()
                .matmul(&u1)
                .sub(&ComplexMatrix::identity(2))
                .max_abs()
                < 1e-13
        );
        assert!(u2.matmul(&u1).sub(&u3).max_abs() < 1e-13);
    }

    #[test]
    fn trace_norm_requires_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(m.trace_norm(), Err(Error::NotHermitian { .. })));
    }
}
