//! Seeded random instance generators used by the verification CLI and the
//! property tests. Everything is deterministic given the RNG state.

use rand::Rng;

use crate::matrix::Matrix;
use crate::measure::DiscreteMeasure;
use crate::spd::{SpdMatrix, SymMatrix};

/// Standard normal sample via Box-Muller (plain f64 ops, reproducible
/// across platforms for a fixed RNG stream).
fn normal(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        if u <= f64::MIN_POSITIVE {
            continue;
        }
        let v: f64 = rng.gen::<f64>();
        return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
    }
}

fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, normal(rng));
        }
    }
    m
}

/// Orthogonal factor of the QR decomposition of a standard-normal matrix
/// (modified Gram-Schmidt, run twice for orthogonality at roundoff level).
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> Matrix {
    let g = gaussian_matrix(n, rng);
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| g.get(i, j)).collect())
        .collect();
    for _pass in 0..2 {
        for j in 0..n {
            for k in 0..j {
                let dot: f64 = (0..n).map(|i| cols[j][i] * cols[k][i]).sum();
                let (head, tail) = cols.split_at_mut(j);
                for (x, &y) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut cols[j] {
                *x /= norm;
            }
        }
    }
    let mut q = Matrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            q.set(i, j, x);
        }
    }
    q
}

/// Random SPD matrix `Q diag(lambda) Q^T` with `Q` from the QR of a
/// standard-normal matrix and `log lambda` uniform on
/// `[-log sqrt(cond_cap), log sqrt(cond_cap)]`, so the condition number
/// never exceeds `cond_cap`.
pub fn random_spd(n: usize, cond_cap: f64, rng: &mut impl Rng) -> SpdMatrix {
    assert!(cond_cap >= 1.0, "condition cap must be >= 1");
    let half_log = 0.5 * cond_cap.ln();
    let q = random_orthogonal(n, rng);
    let lambdas: Vec<f64> = (0..n)
        .map(|_| (rng.gen_range(-1.0..=1.0) * half_log).exp())
        .collect();
    SpdMatrix::new(Matrix::from_diag(&lambdas).congruence(&q.transpose()))
        .expect("spectral construction is positive definite")
}

/// Random symmetric matrix scaled to the requested Frobenius norm.
pub fn random_sym_with_norm(n: usize, frobenius_norm: f64, rng: &mut impl Rng) -> SymMatrix {
    let g = gaussian_matrix(n, rng).symmetrize();
    let current = g.frobenius_norm();
    SymMatrix::from_symmetric(g.scale(frobenius_norm / current.max(f64::MIN_POSITIVE)))
}

/// Random positive semidefinite perturbation `scale * C C^T / n`.
pub fn random_psd(n: usize, scale: f64, rng: &mut impl Rng) -> SymMatrix {
    let c = gaussian_matrix(n, rng);
    SymMatrix::from_symmetric(c.mul(&c.transpose()).scale(scale / n as f64))
}

/// Random weight vector: positive entries bounded away from zero, summing
/// to 1 exactly.
pub fn random_weights(m: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..m).map(|_| 0.1 + rng.gen::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = weights[..m - 1].iter().sum();
    weights[m - 1] = 1.0 - head;
    weights
}

/// Random finitely supported SPD measure with either uniform or random
/// weights.
pub fn random_spd_measure(
    n: usize,
    atoms: usize,
    cond_cap: f64,
    uniform: bool,
    rng: &mut impl Rng,
) -> DiscreteMeasure<SpdMatrix> {
    let support: Vec<SpdMatrix> = (0..atoms).map(|_| random_spd(n, cond_cap, rng)).collect();
    if uniform {
        DiscreteMeasure::uniform(support).expect("nonempty support")
    } else {
        let weights = random_weights(atoms, rng);
        DiscreteMeasure::new(support, weights).expect("validated weights")
    }
}

/// Random symplectic matrix: a product of 3-6 elementary factors
/// `[[I, P], [0, I]]`, `[[I, 0], [Q, I]]` (P, Q symmetric) and
/// `[[L, 0], [0, L^{-T}]]` (L well-conditioned), with entries bounded so
/// the product's conditioning stays moderate.
pub fn random_symplectic(half_dim: usize, rng: &mut impl Rng) -> Matrix {
    let n = half_dim;
    let dim = 2 * n;
    let factors = rng.gen_range(3..=6);
    let mut s = Matrix::identity(dim);
    for _ in 0..factors {
        let kind = rng.gen_range(0..3);
        let mut f = Matrix::identity(dim);
        match kind {
            0 => {
                // [[I, P], [0, I]] with P symmetric.
                let p = random_sym_with_norm(n, 0.5 + 0.3 * rng.gen::<f64>(), rng);
                for i in 0..n {
                    for j in 0..n {
                        f.set(i, n + j, p.get(i, j));
                    }
                }
            }
            1 => {
                // [[I, 0], [Q, I]] with Q symmetric.
                let q = random_sym_with_norm(n, 0.5 + 0.3 * rng.gen::<f64>(), rng);
                for i in 0..n {
                    for j in 0..n {
                        f.set(n + i, j, q.get(i, j));
                    }
                }
            }
            _ => {
                // [[L, 0], [0, L^{-T}]] with L = U diag(e^u) V^T and
                // |u| <= 1/2, hence cond(L) <= e.
                let u = random_orthogonal(n, rng);
                let v = random_orthogonal(n, rng);
                let d: Vec<f64> = (0..n)
                    .map(|_| rng.gen_range(-0.5f64..=0.5).exp())
                    .collect();
                let l = u.mul(&Matrix::from_diag(&d)).mul(&v.transpose());
                let d_inv: Vec<f64> = d.iter().map(|x| 1.0 / x).collect();
                let l_inv_t = u.mul(&Matrix::from_diag(&d_inv)).mul(&v.transpose());
                for i in 0..n {
                    for j in 0..n {
                        f.set(i, j, l.get(i, j));
                        f.set(n + i, n + j, l_inv_t.get(i, j));
                    }
                }
            }
        }
        s = s.mul(&f);
    }
    s
}
