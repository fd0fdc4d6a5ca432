//! Dense complex-Hermitian matrix kernel.
//!
//! Matrices are stored row-major as `Vec<Complex64>`. The kernel targets
//! explicitly materialized operators of dimension up to a few hundred;
//! everything is plain `O(n^2)`/`O(n^3)` dense arithmetic.
//!
//! Bipartite index convention: `|i⟩_A |j⟩_B` lives at flat index
//! `i * dim_b + j`. All modules rely on this ordering.

mod eig;

pub use eig::{eig_hermitian, EigenDecomposition};

use crate::error::{Error, Result};

pub type Complex64 = num_complex::Complex<f64>;

/// Hermiticity tolerance: max absolute entry deviation from the conjugate
/// transpose.
pub const TOL_HERM: f64 = 1e-10;
/// Trace tolerance for density matrices.
pub const TOL_TRACE: f64 = 1e-10;
/// Positivity tolerance: eigenvalues above `-TOL_PSD` count as nonnegative.
pub const TOL_PSD: f64 = 1e-9;
/// Norm tolerance for pure-state amplitudes.
pub const TOL_NORM: f64 = 1e-12;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major data. Panics if the entry count does
    /// not match `rows * cols` (programming error, not input validation).
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count {} does not match {}x{}",
            data.len(),
            rows,
            cols
        );
        Self { rows, cols, data }
    }

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
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let entries: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&entries)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
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
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Kronecker product with the row index of `self` major.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max deviation from the conjugate transpose, `max_ij |a_ij - conj(a_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn all_finite(&self) -> Result<()> {
        for (index, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b` with the row index of `a` major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

/// `m`-fold Kronecker power.
pub fn tensor_pow(a: &ComplexMatrix, m: u32) -> ComplexMatrix {
    assert!(m >= 1, "tensor power requires at least one factor");
    let mut out = a.clone();
    for _ in 1..m {
        out = out.tensor(a);
    }
    out
}

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates unit Euclidean norm within `TOL_NORM`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        for (index, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized {
                norm,
                deviation: (norm - 1.0).abs(),
                tolerance: TOL_NORM,
            });
        }
        Ok(Self {
            dim: amplitudes.len(),
            amplitudes,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of `|i⟩_A |j⟩_B` under the flat convention `i * dim_b + j`.
    #[inline]
    pub fn amplitude_bipartite(&self, i: usize, j: usize, dim_b: usize) -> Complex64 {
        self.amplitudes[i * dim_b + j]
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Projector `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        m
    }

    /// Fix the global phase so the largest-magnitude amplitude is real
    /// positive. Ties break on the first such amplitude, which keeps the
    /// result deterministic.
    pub fn phase_normalized(&self) -> Self {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (i, z) in self.amplitudes.iter().enumerate() {
            let mag = z.norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag == 0.0 {
            return self.clone();
        }
        let phase = self.amplitudes[best] / best_mag;
        let factor = phase.conj();
        Self {
            dim: self.dim,
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }
}

/// Square matrix equal to its conjugate transpose within `TOL_HERM`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        matrix.all_finite()?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > TOL_HERM {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: TOL_HERM,
            });
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Bipartite density matrix with dimension metadata.
///
/// Validated on construction: Hermitian within `TOL_HERM`, unit trace within
/// `TOL_TRACE`, minimal eigenvalue at least `-TOL_PSD`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Result<Self> {
        let n = dim_a * dim_b;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: matrix.rows() * matrix.cols(),
            });
        }
        matrix.all_finite()?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > TOL_HERM {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: TOL_HERM,
            });
        }
        let trace = matrix.trace();
        let trace_dev = ((trace.re - 1.0).powi(2) + trace.im.powi(2)).sqrt();
        if trace_dev > TOL_TRACE {
            return Err(Error::InvalidTrace {
                trace: trace.re,
                deviation: trace_dev,
                tolerance: TOL_TRACE,
            });
        }
        let herm = HermitianOperator {
            dim: n,
            matrix: matrix.clone(),
        };
        let decomp = eig_hermitian(&herm);
        let min_eigenvalue = decomp.eigenvalues[0];
        if min_eigenvalue < -TOL_PSD {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue,
                tolerance: TOL_PSD,
            });
        }
        Ok(Self {
            dim_a,
            dim_b,
            matrix,
        })
    }

    pub fn from_pure(psi: &PureState, dim_a: usize, dim_b: usize) -> Result<Self> {
        if psi.dim() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                actual: psi.dim(),
            });
        }
        Self::new(dim_a, dim_b, psi.projector())
    }

    #[inline]
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    #[inline]
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    #[inline]
    pub fn total_dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Reduced state on B, `tr_A(ρ)`.
    pub fn partial_trace_a(&self) -> ComplexMatrix {
        partial_trace_a(&self.matrix, self.dim_a, self.dim_b)
            .expect("dimensions validated at construction")
    }

    /// Reduced state on A, `tr_B(ρ)`.
    pub fn partial_trace_b(&self) -> ComplexMatrix {
        partial_trace_b(&self.matrix, self.dim_a, self.dim_b)
            .expect("dimensions validated at construction")
    }
}

/// `tr_A` of a raw matrix on a `dim_a x dim_b` bipartition.
pub fn partial_trace_a(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: m.rows() * m.cols(),
        });
    }
    let mut out = ComplexMatrix::zeros(dim_b, dim_b);
    for j in 0..dim_b {
        for l in 0..dim_b {
            let mut sum = Complex64::new(0.0, 0.0);
            for i in 0..dim_a {
                sum += m.get(i * dim_b + j, i * dim_b + l);
            }
            out.set(j, l, sum);
        }
    }
    Ok(out)
}

/// `tr_B` of a raw matrix on a `dim_a x dim_b` bipartition.
pub fn partial_trace_b(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: m.rows() * m.cols(),
        });
    }
    let mut out = ComplexMatrix::zeros(dim_a, dim_a);
    for i in 0..dim_a {
        for k in 0..dim_a {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..dim_b {
                sum += m.get(i * dim_b + j, k * dim_b + j);
            }
            out.set(i, k, sum);
        }
    }
    Ok(out)
}

/// Partial transpose on the A factor.
pub fn partial_transpose_a(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: m.rows() * m.cols(),
        });
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..dim_a {
        for k in 0..dim_a {
            for j in 0..dim_b {
                for l in 0..dim_b {
                    out.set(
                        k * dim_b + j,
                        i * dim_b + l,
                        m.get(i * dim_b + j, k * dim_b + l),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Permute tensor factors of an operator on `⊗_s C^{dims[s]}`.
///
/// `perm[t]` names the old factor placed at new position `t`; rows and
/// columns are permuted identically (a unitary relabeling).
pub fn permute_subsystems(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix> {
    assert_eq!(
        dims.len(),
        perm.len(),
        "permutation length must match factor count"
    );
    {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(p < perm.len() && !seen[p], "perm must be a permutation");
            seen[p] = true;
        }
    }
    let n: usize = dims.iter().product();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: m.rows() * m.cols(),
        });
    }
    // strides of the new ordering
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut new_strides = vec![1usize; perm.len()];
    for t in (0..perm.len().saturating_sub(1)).rev() {
        new_strides[t] = new_strides[t + 1] * new_dims[t + 1];
    }
    let mut old_strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        old_strides[s] = old_strides[s + 1] * dims[s + 1];
    }
    let map = |old: usize| -> usize {
        let mut digits = vec![0usize; dims.len()];
        let mut rem = old;
        for s in 0..dims.len() {
            digits[s] = rem / old_strides[s];
            rem %= old_strides[s];
        }
        (0..perm.len())
            .map(|t| digits[perm[t]] * new_strides[t])
            .sum()
    };
    let row_map: Vec<usize> = (0..n).map(map).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(row_map[i], row_map[j], m.get(i, j));
        }
    }
    Ok(out)
}

/// Reorder `k` copies of a `d x d` bipartite system from the interleaved
/// ordering `(A1 B1 A2 B2 …)` produced by tensor powers to the blocked
/// bipartition `(A1 … Ak | B1 … Bk)`.
pub fn reorder_copies_to_blocked(m: &ComplexMatrix, d: usize, k: usize) -> Result<ComplexMatrix> {
    let dims = vec![d; 2 * k];
    let mut perm = Vec::with_capacity(2 * k);
    perm.extend((0..k).map(|c| 2 * c));
    perm.extend((0..k).map(|c| 2 * c + 1));
    permute_subsystems(m, &dims, &perm)
}

/// Von Neumann entropy in bits, `S = -Σ λ_i log2 λ_i` with `0 log 0 := 0`.
///
/// The input must be Hermitian, trace one and positive semi-definite within
/// the module tolerances; eigenvalues below `TOL_PSD` are clamped to zero.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let herm = HermitianOperator::new(m.clone())?;
    let trace = m.trace();
    let trace_dev = ((trace.re - 1.0).powi(2) + trace.im.powi(2)).sqrt();
    if trace_dev > TOL_TRACE {
        return Err(Error::InvalidTrace {
            trace: trace.re,
            deviation: trace_dev,
            tolerance: TOL_TRACE,
        });
    }
    let decomp = eig_hermitian(&herm);
    let min_eigenvalue = decomp.eigenvalues[0];
    if min_eigenvalue < -TOL_PSD {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue,
            tolerance: TOL_PSD,
        });
    }
    let mut s = 0.0;
    for &lambda in &decomp.eigenvalues {
        if lambda > TOL_PSD {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}
