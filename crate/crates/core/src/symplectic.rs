//! Symplectic linear algebra on the SPD cone of even dimension: the
//! standard form `J`, symplectic eigenvalues, the extended map, the
//! Williamson decomposition, the top-eigenvalue order criterion, and
//! compound (antisymmetric tensor power) matrices.
//!
//! Symplectic eigenvalues are computed from the symmetric eigenproblem of
//! `A^{1/2} J^T A J A^{1/2}` rather than from the non-symmetric `iJA`
//! spectrum: this reuses the Jacobi solver and keeps everything real.
//! Compound-matrix index subsets are lexicographic, fixed.

use itertools::Itertools;

use crate::eig::jacobi_eig;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spd::SpdMatrix;
use crate::majorization::OrderedPositiveVector;

/// Relative gap allowed inside a doubled-eigenvalue pair.
const PAIRING_REL_TOL: f64 = 1e-7;
/// Frobenius tolerance for `M^T J M = J`.
const SYMPLECTIC_TOL: f64 = 1e-8;
/// Relative Frobenius tolerance for `M^T diag(D,D) M = A`.
const RECONSTRUCTION_REL_TOL: f64 = 1e-8;
/// Relative determinant consistency required of a spectrum.
const DET_REL_TOL: f64 = 1e-8;

/// The standard symplectic form `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn standard_j(half_dim: usize) -> Matrix {
    let n = half_dim;
    let mut j = Matrix::zeros(2 * n);
    for i in 0..n {
        j.set(i, n + i, 1.0);
        j.set(n + i, i, -1.0);
    }
    j
}

/// Symplectic eigenvalues of a `2n x 2n` SPD matrix.
///
/// `d` is increasing (Williamson order `0 < d_1 <= ... <= d_n`);
/// `extended` is the doubled, reversed copy of `d` as a decreasing
/// positive vector of length `2n`.
#[derive(Debug, Clone)]
pub struct SymplecticSpectrum {
    pub half_dim: usize,
    pub d: Vec<f64>,
    pub extended: OrderedPositiveVector,
}

fn half_dim_of(a: &SpdMatrix) -> Result<usize> {
    if !a.dim().is_multiple_of(2) {
        return Err(Error::OddDimension(a.dim()));
    }
    Ok(a.dim() / 2)
}

/// `A^{1/2} J^T A J A^{1/2}`, the SPD matrix whose eigenvalues are the
/// squared symplectic eigenvalues, each doubled.
fn seigen_core(a: &SpdMatrix) -> Result<Matrix> {
    let n = half_dim_of(a)?;
    let j = standard_j(n);
    let (rt, _) = a.sqrt_pair()?;
    // J^T A J, then the congruence by A^{1/2}.
    let jtaj = a.as_matrix().congruence(&j);
    Ok(jtaj.congruence(&rt))
}

/// Pairs an ascending eigenvalue list into doubled pairs, returning the
/// geometric mean of each pair. Errors when a pair's relative gap exceeds
/// the internal-consistency tolerance.
fn pair_doubled_ascending(values_ascending: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values_ascending.len() / 2);
    for pair in values_ascending.chunks_exact(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let gap = (hi - lo).abs() / hi.abs().max(lo.abs());
        if gap > PAIRING_REL_TOL {
            return Err(Error::PairingFailure { a: lo, b: hi, gap });
        }
        out.push((lo * hi).sqrt());
    }
    Ok(out)
}

/// Symplectic eigenvalues via the square roots of the paired eigenvalues
/// of `A^{1/2} J^T A J A^{1/2}`.
pub fn symplectic_eigenvalues(a: &SpdMatrix) -> Result<SymplecticSpectrum> {
    let half_dim = half_dim_of(a)?;
    let core = seigen_core(a)?;
    let mut values = jacobi_eig(&core)?.values;
    values.reverse(); // ascending
    let d: Vec<f64> = pair_doubled_ascending(&values)?
        .into_iter()
        .map(f64::sqrt)
        .collect();

    let mut extended = Vec::with_capacity(2 * half_dim);
    for &di in d.iter().rev() {
        extended.push(di);
        extended.push(di);
    }
    let extended = OrderedPositiveVector::new(extended)?;

    // Internal consistency: the product of the extended vector is det(A).
    let det = a.as_matrix().det();
    let prod = extended.product();
    if (prod - det).abs() > DET_REL_TOL * det.abs().max(prod.abs()) {
        return Err(Error::PairingFailure {
            a: prod,
            b: det,
            gap: (prod - det).abs() / det.abs().max(prod.abs()),
        });
    }

    Ok(SymplecticSpectrum {
        half_dim,
        d,
        extended,
    })
}

/// The extended symplectic eigenvalue map: the decreasing `2n`-vector
/// duplicating each symplectic eigenvalue. Homogeneous of degree 1.
pub fn extended_symplectic_map(a: &SpdMatrix) -> Result<OrderedPositiveVector> {
    Ok(symplectic_eigenvalues(a)?.extended)
}

/// Williamson normal form `A = M^T diag(D, D) M` with `M` symplectic.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    /// Symplectic eigenvalues, increasing.
    pub d: Vec<f64>,
    /// Symplectic congruence factor: `M^T J M = J`.
    pub m: Matrix,
}

impl WilliamsonDecomposition {
    /// `diag(D, D)` as a full matrix.
    pub fn d_block(&self) -> Matrix {
        let n = self.d.len();
        let mut diag = Vec::with_capacity(2 * n);
        diag.extend_from_slice(&self.d);
        diag.extend_from_slice(&self.d);
        Matrix::from_diag(&diag)
    }
}

/// Williamson decomposition of a `2n x 2n` SPD matrix.
///
/// Construction: form the skew-symmetric `S = A^{1/2} J A^{1/2}`, split
/// the eigenspaces of `S^T S` into planes on which `S` acts as the
/// rotation-scaling `[[0, d], [-d, 0]]`, assemble the orthogonal `Q` with
/// `Q S Q^T = [[0, D], [-D, 0]]`, and set `M = diag(D,D)^{-1/2} Q A^{1/2}`.
/// `M` is not unique; the result is verified against the type invariants
/// and a diagnostic error is returned when verification fails.
pub fn williamson(a: &SpdMatrix) -> Result<WilliamsonDecomposition> {
    let n = half_dim_of(a)?;
    let dim = 2 * n;
    let j = standard_j(n);
    let (rt, _) = a.sqrt_pair()?;
    let s = rt.mul(&j).mul(&rt); // skew-symmetric
    let sts = s.transpose().mul(&s).symmetrize();
    let eig = jacobi_eig(&sts)?;

    // Columns ascending by eigenvalue of S^T S = -S^2.
    let cols: Vec<Vec<f64>> = (0..dim)
        .rev()
        .map(|k| (0..dim).map(|r| eig.basis.get(r, k)).collect())
        .collect();

    let dot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    let norm = |x: &[f64]| -> f64 { dot(x, x).sqrt() };

    // Greedy plane extraction: take the next eigenvector not yet consumed
    // by a chosen plane, set v = S u / ||S u||. Decreasing thresholds make
    // the scan robust inside (nearly) degenerate clusters.
    let mut planes: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::with_capacity(n);
    for threshold in [0.5, 0.1, 1e-3] {
        for col in &cols {
            if planes.len() == n {
                break;
            }
            let mut r = col.clone();
            for (u, v, _) in &planes {
                let cu = dot(&r, u);
                let cv = dot(&r, v);
                for i in 0..dim {
                    r[i] -= cu * u[i] + cv * v[i];
                }
            }
            let rn = norm(&r);
            if rn <= threshold {
                continue;
            }
            for x in &mut r {
                *x /= rn;
            }
            let apply_s = |x: &[f64]| -> Vec<f64> {
                (0..dim).map(|i| dot(s.row(i), x)).collect()
            };
            let mut w = apply_s(&r);
            // Orthogonalize against u and renormalize, then read d off
            // the antisymmetric form on the plane: this keeps the small
            // symplectic eigenvalues at the accuracy of S rather than of
            // S^T S.
            let wu = dot(&w, &r);
            for (wi, ri) in w.iter_mut().zip(&r) {
                *wi -= wu * ri;
            }
            let wn = norm(&w);
            for x in &mut w {
                *x /= wn;
            }
            let d = 0.5 * (dot(&w, &apply_s(&r)) - dot(&r, &apply_s(&w)));
            planes.push((r, w, d));
        }
        if planes.len() == n {
            break;
        }
    }
    if planes.len() != n {
        return Err(Error::WilliamsonFailure {
            check: "plane extraction",
            residual: (n - planes.len()) as f64,
            tolerance: 0.0,
        });
    }
    planes.sort_by(|a, b| a.2.partial_cmp(&b.2).expect("non-finite symplectic eigenvalue"));

    // Q rows: v_1..v_n then u_1..u_n gives Q S Q^T = [[0, D], [-D, 0]].
    let mut q = Matrix::zeros(dim);
    for (i, (u, v, _)) in planes.iter().enumerate() {
        for k in 0..dim {
            q.set(i, k, v[k]);
            q.set(n + i, k, u[k]);
        }
    }
    let d: Vec<f64> = planes.iter().map(|p| p.2).collect();

    let mut inv_sqrt_dd = Vec::with_capacity(dim);
    for &di in &d {
        inv_sqrt_dd.push(1.0 / di.sqrt());
    }
    let half = inv_sqrt_dd.clone();
    inv_sqrt_dd.extend_from_slice(&half);
    let m = Matrix::from_diag(&inv_sqrt_dd).mul(&q).mul(&rt);

    // First-order symplectification: with skew E = M^T J M - J, the
    // correction M (I - J^T E / 2) cancels E to second order. Clustered
    // symplectic eigenvalues leave plane-mixing defects in Q that this
    // step absorbs.
    let e = m.transpose().mul(&j).mul(&m).sub(&j);
    let correction = Matrix::identity(dim).sub(&j.transpose().mul(&e).scale(0.5));
    let m = m.mul(&correction);

    let decomposition = WilliamsonDecomposition { d, m };

    // Verify the type invariants; this construction has no uniqueness
    // claim, only these checks.
    let mtjm = decomposition.m.transpose().mul(&j).mul(&decomposition.m);
    let symplectic_residual = mtjm.sub(&j).frobenius_norm();
    if symplectic_residual > SYMPLECTIC_TOL {
        return Err(Error::WilliamsonFailure {
            check: "M^T J M = J",
            residual: symplectic_residual,
            tolerance: SYMPLECTIC_TOL,
        });
    }
    let rebuilt = decomposition
        .m
        .transpose()
        .mul(&decomposition.d_block())
        .mul(&decomposition.m);
    let reconstruction_residual =
        rebuilt.sub(a.as_matrix()).frobenius_norm() / a.as_matrix().frobenius_norm();
    if reconstruction_residual > RECONSTRUCTION_REL_TOL {
        return Err(Error::WilliamsonFailure {
            check: "M^T diag(D,D) M = A",
            residual: reconstruction_residual,
            tolerance: RECONSTRUCTION_REL_TOL,
        });
    }
    Ok(decomposition)
}

/// The order criterion for the top symplectic eigenvalue:
/// `d_1(A) <= alpha  iff  J^T A J <= alpha^2 A^{-1}` (in the Loewner
/// order), evaluated as `min eig(alpha^2 A^{-1} - J^T A J) >= -1e-10 alpha^2`.
pub fn top_symplectic_bound_holds(a: &SpdMatrix, alpha: f64) -> Result<bool> {
    let n = half_dim_of(a)?;
    let j = standard_j(n);
    let inv = a.inverse()?;
    let jtaj = a.as_matrix().congruence(&j);
    let gap = inv.as_matrix().scale(alpha * alpha).sub(&jtaj);
    let eig = jacobi_eig(&gap)?;
    Ok(eig.min_value() >= -1e-10 * alpha * alpha)
}

/// `k`-th compound (antisymmetric tensor power) of a square matrix: entry
/// `(I, J)` is the `k x k` minor on row subset `I` and column subset `J`,
/// subsets enumerated in lexicographic order. Multiplicative:
/// `compound(AB) = compound(A) compound(B)`.
pub fn compound_matrix(a: &Matrix, k: usize) -> Result<Matrix> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::CompoundOrderOutOfRange { k, dim: n });
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let size = subsets.len();
    let mut out = Matrix::zeros(size);
    let mut block = Matrix::zeros(k);
    for (bi, rows) in subsets.iter().enumerate() {
        for (bj, cols) in subsets.iter().enumerate() {
            for (r, &row) in rows.iter().enumerate() {
                for (c, &col) in cols.iter().enumerate() {
                    block.set(r, c, a.get(row, col));
                }
            }
            out.set(bi, bj, block.det());
        }
    }
    Ok(out)
}

/// Prefix product of the extended symplectic eigenvalues via the
/// compound-matrix lift: the square root of the LARGEST eigenvalue of
/// `(^k A)^{1/2} J_k^T (^k A) J_k (^k A)^{1/2}` equals
/// `prod_{i<=k} dd_i(A)`.
pub fn symplectic_prefix_product(a: &SpdMatrix, k: usize) -> Result<f64> {
    let n = half_dim_of(a)?;
    if k == 0 || k > 2 * n {
        return Err(Error::CompoundOrderOutOfRange { k, dim: 2 * n });
    }
    let (rt, _) = a.sqrt_pair()?;
    // (^k A)^{1/2} = ^k (A^{1/2}): the compound commutes with SPD roots.
    let ak_rt = compound_matrix(&rt, k)?;
    let jk = compound_matrix(&standard_j(n), k)?;
    let lifted = ak_rt
        .mul(&jk.transpose())
        .mul(&compound_matrix(a.as_matrix(), k)?)
        .mul(&jk)
        .mul(&ak_rt)
        .symmetrize();
    let top = jacobi_eig(&lifted)?.max_value();
    Ok(top.sqrt())
}
