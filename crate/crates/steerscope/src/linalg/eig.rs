//! Hermitian eigendecomposition via cyclic Jacobi with complex rotations.
//!
//! Each rotation annihilates one off-diagonal pair using the phase-absorbed
//! real Jacobi angle; sweeps repeat until the off-diagonal mass falls below
//! machine-level tolerance relative to the Frobenius norm. The accumulated
//! transformation is a product of unitaries, so eigenvectors come out
//! orthonormal without re-orthogonalization.

use super::{Complex64, ComplexMatrix, HermitianOperator};

/// Eigenvalues sorted ascending, eigenvector `j` in column `j`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Eigenvector for position `idx` as an amplitude vector.
    pub fn eigenvector(&self, idx: usize) -> Vec<Complex64> {
        let n = self.eigenvalues.len();
        (0..n).map(|r| self.eigenvectors.get(r, idx)).collect()
    }
}

const MAX_SWEEPS: usize = 100;
const OFF_DIAG_TOL: f64 = 1e-14;

/// Decompose a Hermitian operator. Deterministic: fixed sweep order, stable
/// ascending sort of eigenvalues.
pub fn eig_hermitian(h: &HermitianOperator) -> EigenDecomposition {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    if n > 1 {
        let fro = a.frobenius_norm().max(f64::MIN_POSITIVE);
        let target = OFF_DIAG_TOL * fro;
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors.set(r, new_col, v.get(r, old_col));
        }
    }
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            sum += 2.0 * a.get(p, q).norm_sqr();
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`.
///
/// The off-diagonal phase `w = a_pq / |a_pq|` is absorbed so the remaining
/// 2x2 problem is real symmetric; the rotation applied is
/// `J = diag(1, conj(w)) · [[c, s], [-s, c]]` on the `(p, q)` plane.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r <= f64::MIN_POSITIVE {
        return;
    }
    let w = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J[p][p] = c, J[p][q] = s, J[q][p] = -s*conj(w), J[q][q] = c*conj(w)
    let jqp = -s * w.conj();
    let jqq = c * w.conj();
    let n = a.rows();

    // A <- A J (columns p, q)
    for row in 0..n {
        let arp = a.get(row, p);
        let arq = a.get(row, q);
        a.set(row, p, arp * c + arq * jqp);
        a.set(row, q, arp * s + arq * jqq);
    }
    // A <- J† A (rows p, q)
    for col in 0..n {
        let apc = a.get(p, col);
        let aqc = a.get(q, col);
        a.set(p, col, apc * c + aqc * jqp.conj());
        a.set(q, col, apc * s + aqc * jqq.conj());
    }
    // clean the annihilated pair and rounding on the diagonal
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dpp = a.get(p, p).re;
    let dqq = a.get(q, q).re;
    a.set(p, p, Complex64::new(dpp, 0.0));
    a.set(q, q, Complex64::new(dqq, 0.0));

    // V <- V J
    for row in 0..n {
        let vrp = v.get(row, p);
        let vrq = v.get(row, q);
        v.set(row, p, vrp * c + vrq * jqp);
        v.set(row, q, vrp * s + vrq * jqq);
    }
}
