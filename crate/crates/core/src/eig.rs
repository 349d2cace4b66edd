//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! The sweep order is fixed (row-major over the strict upper triangle),
//! so results are reproducible across platforms. Convergence is declared
//! when the off-diagonal Frobenius norm drops below `1e-13 * ||S||_F`,
//! with a hard cap of 100 sweeps. Adequate for the desk-scale dimensions
//! (n <= ~16) this crate targets; no attempt is made at large-n speed.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const SWEEP_CAP: usize = 100;
const OFF_DIAG_REL_TOL: f64 = 1e-13;

/// Spectral decomposition of a symmetric matrix.
///
/// `values` are sorted decreasingly counting multiplicities; column `k` of
/// `basis` is the eigenvector for `values[k]`. Ties keep the solver's
/// output order (stable sort), so tests must not rely on the eigenvector
/// choice inside a degenerate eigenspace.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub basis: Matrix,
}

impl EigDecomposition {
    /// Reassembles `V diag(f(values)) V^T`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let mut scaled = Matrix::zeros(n);
        // scaled = V diag(f(lambda))
        for i in 0..n {
            for k in 0..n {
                scaled.set(i, k, self.basis.get(i, k) * f(self.values[k]));
            }
        }
        scaled.mul(&self.basis.transpose()).symmetrize()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.apply(|x| x)
    }

    pub fn min_value(&self) -> f64 {
        *self
            .values
            .last()
            .expect("eigendecomposition of an empty matrix")
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }
}

fn off_diag_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = a.get(i, j);
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input is taken as-is; callers are expected to pass an exactly
/// symmetric matrix (the structured types in this crate symmetrize on
/// construction).
pub fn jacobi_eig(s: &Matrix) -> Result<EigDecomposition> {
    let n = s.dim();
    let norm = s.frobenius_norm();
    let tol = OFF_DIAG_REL_TOL * norm;
    let mut a = s.clone();
    let mut v = Matrix::identity(n);

    let mut residual = off_diag_norm(&a);
    let mut sweeps = 0;
    while residual > tol && residual > f64::MIN_POSITIVE {
        if sweeps == SWEEP_CAP {
            return Err(Error::EigNonConvergence { sweeps, residual });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // Rotation angle that annihilates a[p][q].
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    // Degenerate angle: 1/(2 theta) avoids overflow in theta^2.
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                let tau = sn / (1.0 + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        let new_kp = akp - sn * (akq + tau * akp);
                        let new_kq = akq + sn * (akp - tau * akq);
                        a.set(k, p, new_kp);
                        a.set(p, k, new_kp);
                        a.set(k, q, new_kq);
                        a.set(q, k, new_kq);
                    }
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp - sn * (vkq + tau * vkp));
                    v.set(k, q, vkq + sn * (vkp - tau * vkq));
                }
            }
        }
        sweeps += 1;
        residual = off_diag_norm(&a);
    }

    // Stable decreasing sort; equal values keep solver output order.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("non-finite eigenvalue"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut basis = Matrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            basis.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(EigDecomposition { values, basis })
}
