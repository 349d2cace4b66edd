//! Weighted Karcher (Cartan) barycenters of finitely supported measures,
//! push-forwards, the log-Euclidean mean, geometric integrals, and the
//! multi-measure map `Lambda`.
//!
//! The solver iterates `X <- X^{1/2} exp(t * sum_j w_j log(X^{-1/2} A_j
//! X^{-1/2})) X^{1/2}` from the log-Euclidean mean, with `t = 1` and step
//! halving (up to 20 halvings) whenever the residual fails to decrease.
//! Convergence is measured on the Karcher residual in the trace norm, not
//! on step size: the residual is the quantity the barycenter's gradient
//! characterization makes meaningful.

use crate::eig::jacobi_eig;
use crate::error::{Error, Result};
use crate::majorization::{
    vector_geometric_mean_unchecked, OrderedPositiveVector,
};
use crate::matrix::Matrix;
use crate::measure::{DiscreteMeasure, HasDim};
use crate::spd::{SpdMatrix, SymMatrix};

/// Default residual target for the Karcher solver.
pub const KARCHER_TOL: f64 = 1e-11;
/// Default iteration cap for the Karcher solver.
pub const KARCHER_MAX_ITER: usize = 500;
/// Step halvings attempted per iteration before accepting the last trial.
const MAX_HALVINGS: usize = 20;
/// Default cap on the product-support size of `Lambda`.
pub const PRODUCT_SUPPORT_CAP: usize = 2000;

/// Solved barycenter together with its convergence certificate.
///
/// `residual_norm` is `||sum_j w_j log(X^{-1/2} A_j X^{-1/2})||_2` at the
/// returned `mean`.
#[derive(Debug, Clone)]
pub struct KarcherResult {
    pub mean: SpdMatrix,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// The Karcher gradient field `sum_j w_j log(X^{-1/2} A_j X^{-1/2})` at
/// `X` expressed in the Cholesky frame (`X = L L^T`; the two frames are
/// orthogonally similar, so norms and the step below are unchanged),
/// together with the curvature bound on the objective's Hessian,
/// `sum_j w_j s_j coth(s_j)` with `s_j = delta(X, A_j) / sqrt(2)` (the
/// cone's sectional curvature lies in [-1/2, 0]).
fn karcher_gradient_hessian(
    l: &Matrix,
    mu: &DiscreteMeasure<SpdMatrix>,
) -> Result<(SymMatrix, f64)> {
    let mut grad = Matrix::zeros(l.dim());
    let mut hessian_bound = 0.0;
    for (w, atom) in mu.iter() {
        let whitened = crate::matrix::whiten_lower(l, atom.as_matrix());
        let log = jacobi_eig(&whitened)?.apply(f64::ln);
        let s = log.frobenius_norm() * std::f64::consts::FRAC_1_SQRT_2;
        hessian_bound += w * if s < 1e-8 { 1.0 } else { s / s.tanh() };
        grad = grad.add(&log.scale(w));
    }
    Ok((SymMatrix::from_symmetric(grad), hessian_bound))
}

fn karcher_gradient(x: &SpdMatrix, mu: &DiscreteMeasure<SpdMatrix>) -> Result<SymMatrix> {
    Ok(karcher_gradient_hessian(&x.cholesky()?, mu)?.0)
}

/// Norm of the Karcher equation's left-hand side at `X`; zero exactly at
/// the barycenter.
pub fn karcher_residual(x: &SpdMatrix, mu: &DiscreteMeasure<SpdMatrix>) -> Result<f64> {
    if x.dim() != mu.atom_dim() {
        return Err(Error::DimensionMismatch(x.dim(), mu.atom_dim()));
    }
    Ok(karcher_gradient(x, mu)?.frobenius_norm())
}

/// Log-Euclidean mean `exp(sum_j w_j log A_j)`, the Lie-Trotter limit of
/// `G(mu^s)^{1/s}` as `s -> 0`. Also the solver's initial point: it is
/// within `O(diam^2)` of the barycenter and exact for commuting families.
pub fn log_euclidean_mean(mu: &DiscreteMeasure<SpdMatrix>) -> Result<SpdMatrix> {
    let mut acc = Matrix::zeros(mu.atom_dim());
    for (w, atom) in mu.iter() {
        acc = acc.add(&atom.log()?.as_matrix().scale(w));
    }
    SymMatrix::from_symmetric(acc).exp()
}

/// Weighted Karcher mean of an SPD-valued measure, solved to `tol` on the
/// residual norm within `max_iter` iterations.
pub fn karcher_mean_with(
    mu: &DiscreteMeasure<SpdMatrix>,
    tol: f64,
    max_iter: usize,
) -> Result<KarcherResult> {
    assert!(tol > 0.0, "residual tolerance must be positive");
    let mut x = log_euclidean_mean(mu)?;
    let mut l = x.cholesky()?;
    let (mut grad, mut hessian_bound) = karcher_gradient_hessian(&l, mu)?;
    let mut residual = grad.frobenius_norm();
    let mut iterations = 0;

    while residual > tol {
        if iterations == max_iter {
            return Err(Error::KarcherNonConvergence { max_iter, residual });
        }
        // Damped step: 2/(1 + H) is the optimal fixed factor when the
        // Hessian spectrum sits in [1, H]; a unit step overshoots badly
        // on wide measures. Halve further whenever the residual still
        // fails to decrease, keeping the best probe.
        let t0 = (2.0 / (1.0 + hessian_bound)).min(1.0);
        let mut t = t0;
        let mut best: Option<(SpdMatrix, Matrix, SymMatrix, f64, f64)> = None;
        for _halving in 0..=MAX_HALVINGS {
            let step = jacobi_eig(grad.as_matrix())?.apply(|v| (t * v).exp());
            let trial = SpdMatrix::from_symmetric_unchecked(
                l.mul(&step).mul(&l.transpose()).symmetrize(),
            );
            let trial_l = trial.cholesky()?;
            let (trial_grad, trial_hessian) = karcher_gradient_hessian(&trial_l, mu)?;
            let trial_res = trial_grad.frobenius_norm();
            if best.as_ref().is_none_or(|b| trial_res < b.3) {
                best = Some((trial, trial_l, trial_grad, trial_res, trial_hessian));
            }
            if trial_res < residual {
                break;
            }
            t *= 0.5;
        }
        let (next_x, next_l, next_grad, next_res, next_hessian) =
            best.expect("at least one probe evaluated");
        x = next_x;
        l = next_l;
        grad = next_grad;
        residual = next_res;
        hessian_bound = next_hessian;
        iterations += 1;
    }

    Ok(KarcherResult {
        mean: x,
        residual_norm: residual,
        iterations,
    })
}

/// [`karcher_mean_with`] at the default tolerance and iteration cap.
pub fn karcher_mean(mu: &DiscreteMeasure<SpdMatrix>) -> Result<KarcherResult> {
    karcher_mean_with(mu, KARCHER_TOL, KARCHER_MAX_ITER)
}

/// Push-forward of `mu` by the power map `A -> A^r`; atoms are powered,
/// weights unchanged. For `0 < r < 1` the power map is a strict
/// contraction in both metrics.
pub fn power_pushforward(
    mu: &DiscreteMeasure<SpdMatrix>,
    r: f64,
) -> Result<DiscreteMeasure<SpdMatrix>> {
    mu.try_map(|a| a.powf(r))
}

/// Geometric integral of a sample set: the Karcher mean of the uniform
/// empirical measure on `samples`.
pub fn geometric_integral(samples: &[SpdMatrix]) -> Result<SpdMatrix> {
    let mu = DiscreteMeasure::uniform(samples.to_vec())?;
    Ok(karcher_mean(&mu)?.mean)
}

/// Arithmetic barycenter `sum_j w_j A_j`.
pub fn arithmetic_mean(mu: &DiscreteMeasure<SpdMatrix>) -> SpdMatrix {
    let mut acc = Matrix::zeros(mu.atom_dim());
    for (w, atom) in mu.iter() {
        acc = acc.add(&atom.as_matrix().scale(w));
    }
    SpdMatrix::from_symmetric_unchecked(acc)
}

/// Harmonic barycenter `(sum_j w_j A_j^{-1})^{-1}`.
pub fn harmonic_mean(mu: &DiscreteMeasure<SpdMatrix>) -> Result<SpdMatrix> {
    let inverted = mu.try_map(|a| a.inverse())?;
    arithmetic_mean(&inverted).inverse()
}

/// Push-forward by the eigenvalue map: `lambda_* mu`.
pub fn pushforward_eigen(
    mu: &DiscreteMeasure<SpdMatrix>,
) -> Result<DiscreteMeasure<OrderedPositiveVector>> {
    mu.try_map(|a| a.eigenvalues())
}

/// Cartan barycenter of a measure on the positive orthant: the
/// componentwise weighted geometric mean of the atoms.
pub fn vector_barycenter(mu: &DiscreteMeasure<OrderedPositiveVector>) -> OrderedPositiveVector {
    vector_geometric_mean_unchecked(mu.atoms(), mu.weights())
}

/// Atom types that admit the uniform geometric mean used by `Lambda`.
pub trait GeometricMeanable: HasDim + Clone {
    fn uniform_geometric_mean(items: &[Self]) -> Result<Self>;
}

impl GeometricMeanable for SpdMatrix {
    fn uniform_geometric_mean(items: &[Self]) -> Result<Self> {
        if items.len() == 1 {
            return Ok(items[0].clone());
        }
        let mu = DiscreteMeasure::uniform(items.to_vec())?;
        Ok(karcher_mean(&mu)?.mean)
    }
}

impl GeometricMeanable for OrderedPositiveVector {
    fn uniform_geometric_mean(items: &[Self]) -> Result<Self> {
        let mu = DiscreteMeasure::uniform(items.to_vec())?;
        Ok(vector_barycenter(&mu))
    }
}

/// The multi-measure map `Lambda(mu_1, ..., mu_m) = G_*(mu_1 x ... x mu_m)`:
/// one atom `G(A_{1 i_1}, ..., A_{m i_m})` per element of the product
/// support, with weight `prod_j w_{j i_j}`. Errors when the product support
/// exceeds `cap`.
pub fn product_barycenter_measure_with<T: GeometricMeanable>(
    measures: &[DiscreteMeasure<T>],
    cap: usize,
) -> Result<DiscreteMeasure<T>> {
    if measures.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    let size = measures
        .iter()
        .try_fold(1usize, |acc, mu| acc.checked_mul(mu.len()))
        .ok_or(Error::ProductCapExceeded {
            size: usize::MAX,
            cap,
        })?;
    if size > cap {
        return Err(Error::ProductCapExceeded { size, cap });
    }
    if measures.len() == 1 {
        return Ok(measures[0].clone());
    }

    let m = measures.len();
    let mut atoms = Vec::with_capacity(size);
    let mut weights = Vec::with_capacity(size);
    let mut index = vec![0usize; m];
    loop {
        let tuple: Vec<T> = index
            .iter()
            .enumerate()
            .map(|(j, &i)| measures[j].atoms()[i].clone())
            .collect();
        let weight: f64 = index
            .iter()
            .enumerate()
            .map(|(j, &i)| measures[j].weights()[i])
            .product();
        atoms.push(T::uniform_geometric_mean(&tuple)?);
        weights.push(weight);

        // Odometer increment over the product index set.
        let mut j = m;
        loop {
            if j == 0 {
                let total: f64 = weights.iter().sum();
                // Absorb roundoff from the weight products so the measure
                // constructor's sum-to-1 check is exact.
                for w in &mut weights {
                    *w /= total;
                }
                return DiscreteMeasure::new(atoms, weights);
            }
            j -= 1;
            index[j] += 1;
            if index[j] < measures[j].len() {
                break;
            }
            index[j] = 0;
        }
    }
}

/// [`product_barycenter_measure_with`] at the default support cap.
pub fn product_barycenter_measure<T: GeometricMeanable>(
    measures: &[DiscreteMeasure<T>],
) -> Result<DiscreteMeasure<T>> {
    product_barycenter_measure_with(measures, PRODUCT_SUPPORT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> SpdMatrix {
        SpdMatrix::from_diag(d).unwrap()
    }

    #[test]
    fn commuting_family_gives_entrywise_geometric_mean() {
        let mu = DiscreteMeasure::uniform(vec![diag(&[1.0, 8.0]), diag(&[4.0, 2.0])]).unwrap();
        let result = karcher_mean(&mu).unwrap();
        assert!((result.mean.get(0, 0) - 2.0).abs() < 1e-10);
        assert!((result.mean.get(1, 1) - 4.0).abs() < 1e-10);
        assert!(result.mean.get(0, 1).abs() < 1e-10);
        assert!(result.residual_norm <= KARCHER_TOL);
    }

    #[test]
    fn point_mass_is_fixed() {
        let a = SpdMatrix::new(
            Matrix::from_nested(&[&[2.0, 0.5], &[0.5, 1.0]]).unwrap(),
        )
        .unwrap();
        let mu = DiscreteMeasure::point_mass(a.clone());
        let result = karcher_mean(&mu).unwrap();
        assert_eq!(result.iterations, 0);
        assert!(result.residual_norm <= KARCHER_TOL);
        let err = result.mean.as_matrix().sub(a.as_matrix()).frobenius_norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn two_atom_mean_is_geodesic_midpoint() {
        let a = SpdMatrix::new(Matrix::from_nested(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap()).unwrap();
        let b = SpdMatrix::new(Matrix::from_nested(&[&[4.0, -1.0], &[-1.0, 1.0]]).unwrap()).unwrap();
        let mu = DiscreteMeasure::uniform(vec![a.clone(), b.clone()]).unwrap();
        let mean = karcher_mean(&mu).unwrap().mean;
        let midpoint = a.geometric_mean(&b).unwrap();
        let err = mean.as_matrix().sub(midpoint.as_matrix()).frobenius_norm();
        assert!(err < 1e-9, "midpoint error {err}");
    }

    #[test]
    fn weighted_two_atom_mean_follows_geodesic() {
        let a = SpdMatrix::new(Matrix::from_nested(&[&[3.0, 0.8], &[0.8, 1.0]]).unwrap()).unwrap();
        let b = SpdMatrix::new(Matrix::from_nested(&[&[1.0, -0.4], &[-0.4, 2.0]]).unwrap()).unwrap();
        for t in [0.25, 0.5, 0.75] {
            let mu = DiscreteMeasure::new(vec![a.clone(), b.clone()], vec![1.0 - t, t]).unwrap();
            let mean = karcher_mean(&mu).unwrap().mean;
            let geo = a.geodesic(&b, t).unwrap();
            let err = mean.as_matrix().sub(geo.as_matrix()).frobenius_norm();
            assert!(err < 1e-10, "t = {t}: error {err}");
        }
    }

    #[test]
    fn residual_examples() {
        let a = diag(&[2.0, 3.0]);
        let mu = DiscreteMeasure::point_mass(a.clone());
        assert!(karcher_residual(&a, &mu).unwrap() < 1e-13);

        // X = diag(2,4) solves the commuting instance exactly.
        let mu = DiscreteMeasure::uniform(vec![diag(&[1.0, 8.0]), diag(&[4.0, 2.0])]).unwrap();
        assert!(karcher_residual(&diag(&[2.0, 4.0]), &mu).unwrap() < 1e-12);

        // X = I against a point mass at diag(e^2, e^2): residual 2 sqrt(2).
        let e2 = std::f64::consts::E.powi(2);
        let nu = DiscreteMeasure::point_mass(diag(&[e2, e2]));
        let r = karcher_residual(&SpdMatrix::identity(2), &nu).unwrap();
        assert!((r - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn determinant_identity() {
        let mu = DiscreteMeasure::new(
            vec![
                SpdMatrix::new(Matrix::from_nested(&[&[2.0, 0.3], &[0.3, 1.0]]).unwrap()).unwrap(),
                SpdMatrix::new(Matrix::from_nested(&[&[1.0, -0.2], &[-0.2, 4.0]]).unwrap()).unwrap(),
                diag(&[0.5, 3.0]),
            ],
            vec![0.2, 0.5, 0.3],
        )
        .unwrap();
        let mean = karcher_mean(&mu).unwrap().mean;
        let expected: f64 = mu
            .iter()
            .map(|(w, a)| w * a.log_det().unwrap())
            .sum();
        assert!((mean.log_det().unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn power_pushforward_examples() {
        let mu = DiscreteMeasure::point_mass(diag(&[4.0, 9.0]));
        let half = power_pushforward(&mu, 0.5).unwrap();
        assert!((half.atoms()[0].get(0, 0) - 2.0).abs() < 1e-12);
        assert!((half.atoms()[0].get(1, 1) - 3.0).abs() < 1e-12);

        let same = power_pushforward(&mu, 1.0).unwrap();
        let err = same.atoms()[0]
            .as_matrix()
            .sub(mu.atoms()[0].as_matrix())
            .frobenius_norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn log_euclidean_matches_karcher_for_commuting_atoms() {
        let mu = DiscreteMeasure::uniform(vec![diag(&[1.0, 8.0]), diag(&[4.0, 2.0])]).unwrap();
        let le = log_euclidean_mean(&mu).unwrap();
        let g = karcher_mean(&mu).unwrap().mean;
        assert!(le.as_matrix().sub(g.as_matrix()).frobenius_norm() < 1e-10);

        let single = DiscreteMeasure::point_mass(diag(&[2.5, 0.5]));
        let le = log_euclidean_mean(&single).unwrap();
        assert!((le.get(0, 0) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn geometric_integral_examples() {
        let a = SpdMatrix::new(Matrix::from_nested(&[&[2.0, 0.6], &[0.6, 1.5]]).unwrap()).unwrap();
        let one = geometric_integral(std::slice::from_ref(&a)).unwrap();
        assert!(one.as_matrix().sub(a.as_matrix()).frobenius_norm() < 1e-11);

        let copies = geometric_integral(&[a.clone(), a.clone(), a.clone()]).unwrap();
        assert!(copies.as_matrix().sub(a.as_matrix()).frobenius_norm() < 1e-10);

        let b = SpdMatrix::new(Matrix::from_nested(&[&[1.0, -0.3], &[-0.3, 3.0]]).unwrap()).unwrap();
        let two = geometric_integral(&[a.clone(), b.clone()]).unwrap();
        let mid = a.geometric_mean(&b).unwrap();
        assert!(two.as_matrix().sub(mid.as_matrix()).frobenius_norm() < 1e-9);
    }

    #[test]
    fn arithmetic_and_harmonic_examples() {
        let mu = DiscreteMeasure::uniform(vec![diag(&[1.0, 8.0]), diag(&[4.0, 2.0])]).unwrap();
        let am = arithmetic_mean(&mu);
        assert!((am.get(0, 0) - 2.5).abs() < 1e-14);
        assert!((am.get(1, 1) - 5.0).abs() < 1e-14);

        let single = DiscreteMeasure::point_mass(diag(&[3.0]));
        assert!((arithmetic_mean(&single).get(0, 0) - 3.0).abs() < 1e-14);

        // Harmonic <= Karcher <= arithmetic in the Loewner order.
        let a = SpdMatrix::new(Matrix::from_nested(&[&[2.0, 0.7], &[0.7, 1.2]]).unwrap()).unwrap();
        let b = SpdMatrix::new(Matrix::from_nested(&[&[1.5, -0.4], &[-0.4, 2.5]]).unwrap()).unwrap();
        let mu = DiscreteMeasure::new(vec![a, b], vec![0.35, 0.65]).unwrap();
        let h = harmonic_mean(&mu).unwrap();
        let g = karcher_mean(&mu).unwrap().mean;
        let am = arithmetic_mean(&mu);
        assert!(h.loewner_leq(&g, 1e-9).unwrap());
        assert!(g.loewner_leq(&am, 1e-9).unwrap());
    }

    #[test]
    fn pushforward_eigen_examples() {
        let mu = DiscreteMeasure::point_mass(diag(&[1.0, 5.0, 2.0]));
        let pushed = pushforward_eigen(&mu).unwrap();
        assert_eq!(pushed.atoms()[0].values(), &[5.0, 2.0, 1.0]);
        assert_eq!(pushed.weights(), &[1.0]);
    }

    #[test]
    fn vector_barycenter_closed_form_for_uniform_eigen_pushforward() {
        let atoms = vec![diag(&[4.0, 0.5]), diag(&[9.0, 2.0]), diag(&[1.0, 1.0])];
        let mu = DiscreteMeasure::uniform(atoms.clone()).unwrap();
        let g = vector_barycenter(&pushforward_eigen(&mu).unwrap());
        let m = atoms.len() as f64;
        for i in 0..2 {
            let expected: f64 = atoms
                .iter()
                .map(|a| a.eigenvalues().unwrap().get(i))
                .product::<f64>()
                .powf(1.0 / m);
            assert!((g.get(i) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_single_measure_is_identity() {
        let mu = DiscreteMeasure::uniform(vec![diag(&[1.0, 2.0]), diag(&[3.0, 4.0])]).unwrap();
        let lam = product_barycenter_measure(std::slice::from_ref(&mu)).unwrap();
        assert_eq!(lam.len(), mu.len());
        for (a, b) in lam.atoms().iter().zip(mu.atoms()) {
            assert!(a.as_matrix().sub(b.as_matrix()).frobenius_norm() < 1e-14);
        }
    }

    #[test]
    fn lambda_of_point_masses_is_point_mass_at_mean() {
        let a = diag(&[1.0, 4.0]);
        let b = SpdMatrix::new(Matrix::from_nested(&[&[2.0, 0.5], &[0.5, 3.0]]).unwrap()).unwrap();
        let lam = product_barycenter_measure(&[
            DiscreteMeasure::point_mass(a.clone()),
            DiscreteMeasure::point_mass(b.clone()),
        ])
        .unwrap();
        assert_eq!(lam.len(), 1);
        let expected = karcher_mean(&DiscreteMeasure::uniform(vec![a, b]).unwrap())
            .unwrap()
            .mean;
        assert!(lam.atoms()[0]
            .as_matrix()
            .sub(expected.as_matrix())
            .frobenius_norm()
            < 1e-10);
    }

    #[test]
    fn lambda_two_by_two_enumeration() {
        let mu1 =
            DiscreteMeasure::uniform(vec![diag(&[1.0, 2.0]), diag(&[4.0, 1.0])]).unwrap();
        let mu2 =
            DiscreteMeasure::uniform(vec![diag(&[2.0, 2.0]), diag(&[1.0, 8.0])]).unwrap();
        let lam = product_barycenter_measure(&[mu1.clone(), mu2.clone()]).unwrap();
        assert_eq!(lam.len(), 4);
        for w in lam.weights() {
            assert!((w - 0.25).abs() < 1e-12);
        }
        // Atom (i, j) is the pairwise Karcher mean, here the commuting
        // entrywise geometric mean.
        let mut found = 0;
        for i in 0..2 {
            for j in 0..2 {
                let expected_diag: Vec<f64> = (0..2)
                    .map(|k| {
                        (mu1.atoms()[i].get(k, k) * mu2.atoms()[j].get(k, k)).sqrt()
                    })
                    .collect();
                for atom in lam.atoms() {
                    if (0..2).all(|k| (atom.get(k, k) - expected_diag[k]).abs() < 1e-9) {
                        found += 1;
                        break;
                    }
                }
            }
        }
        assert_eq!(found, 4);
    }

    #[test]
    fn lambda_cap_enforced() {
        let atoms: Vec<SpdMatrix> = (0..8).map(|i| diag(&[1.0 + i as f64])).collect();
        let mu = DiscreteMeasure::uniform(atoms).unwrap();
        let err = product_barycenter_measure_with(&[mu.clone(), mu.clone()], 36);
        assert!(matches!(
            err,
            Err(Error::ProductCapExceeded { size: 64, cap: 36 })
        ));
    }

    #[test]
    fn nonconvergence_is_reported() {
        let mu = DiscreteMeasure::uniform(vec![
            SpdMatrix::new(Matrix::from_nested(&[&[50.0, 10.0], &[10.0, 3.0]]).unwrap()).unwrap(),
            SpdMatrix::new(Matrix::from_nested(&[&[0.1, 0.01], &[0.01, 20.0]]).unwrap()).unwrap(),
        ])
        .unwrap();
        match karcher_mean_with(&mu, 1e-11, 1) {
            Err(Error::KarcherNonConvergence { max_iter: 1, residual }) => {
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
