//! Karcher-mean identity, contraction, Lie-Trotter, and orthant
//! closed-form suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cartan_core::barycenter::{
    arithmetic_mean, harmonic_mean, karcher_mean, karcher_mean_with, log_euclidean_mean,
    power_pushforward, pushforward_eigen, vector_barycenter,
};
use cartan_core::matrix::Matrix;
use cartan_core::measure::DiscreteMeasure;
use cartan_core::random::{
    random_orthogonal, random_psd, random_spd, random_sym_with_norm, random_weights,
};
use cartan_core::spd::SpdMatrix;
use cartan_core::transport::{wasserstein1_spd, MatrixGround};
use cartan_core::Result as CoreResult;

use crate::config::InstanceConfig;
use super::{
    draw_atoms, draw_dim, draw_measure, emit, Checks, TrialOutcome, LIE_TROTTER_FLOOR,
    TOL_COMMUTING_FAMILY, TOL_CONTRACTION, TOL_DETERMINANT_IDENTITY, TOL_KARCHER_RESIDUAL,
    TOL_LOEWNER, TOL_MEAN_IDENTITIES, TOL_PROP_3_2, TOL_TWO_ATOM_GEODESIC,
};

pub(super) fn karcher_props(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let m = draw_atoms(cfg, rng);
    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_MEAN_IDENTITIES));

    // Two-atom weighted means land on the geodesic.
    {
        let a = random_spd(n, cfg.cond_cap, rng);
        let b = random_spd(n, cfg.cond_cap, rng);
        for &t in &cfg.r_grid {
            let mu = DiscreteMeasure::new(vec![a.clone(), b.clone()], vec![1.0 - t, t])?;
            let mean = karcher_mean(&mu)?.mean;
            let geo = a.geodesic(&b, t)?;
            checks.matrices_eq(
                "two-atom mean on geodesic",
                mean.as_matrix(),
                geo.as_matrix(),
                TOL_TWO_ATOM_GEODESIC,
            );
        }
    }

    // Commuting families: entrywise geometric means in the common basis.
    {
        let q = random_orthogonal(n, rng);
        let weights = random_weights(m, rng);
        let diags: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| (rng.gen_range(-1.0..=1.0) * 0.5 * cfg.cond_cap.ln()).exp())
                    .collect()
            })
            .collect();
        let atoms: Vec<SpdMatrix> = diags
            .iter()
            .map(|d| SpdMatrix::new(Matrix::from_diag(d).congruence(&q.transpose())))
            .collect::<CoreResult<_>>()?;
        let mu = DiscreteMeasure::new(atoms, weights.clone())?;
        let mean = karcher_mean(&mu)?.mean;
        let expected_diag: Vec<f64> = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| weights[j] * diags[j][i].ln())
                    .sum::<f64>()
                    .exp()
            })
            .collect();
        let expected = Matrix::from_diag(&expected_diag).congruence(&q.transpose());
        checks.matrices_eq(
            "commuting family entrywise mean",
            mean.as_matrix(),
            &expected,
            TOL_COMMUTING_FAMILY,
        );
    }

    // General weighted instance: residual certificate, determinant
    // identity, congruence invariance, joint homogeneity, self-duality,
    // A-G-H sandwich, and monotonicity.
    let mu = draw_measure(cfg, n, m, rng);
    let solved = karcher_mean(&mu)?;
    let g = &solved.mean;
    checks.le_at(
        "residual <= solver tolerance",
        solved.residual_norm,
        TOL_KARCHER_RESIDUAL,
        0.0,
    );

    let logdet_expected: f64 = mu.iter().map(|(w, a)| w * a.log_det().unwrap_or(f64::NAN)).sum();
    checks.eq_abs(
        "log det G = sum w_j log det A_j",
        g.log_det()?,
        logdet_expected,
        TOL_DETERMINANT_IDENTITY,
    );

    // Congruence invariance under a well-conditioned invertible X.
    {
        let q1 = random_orthogonal(n, rng);
        let q2 = random_orthogonal(n, rng);
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.8f64..=0.8).exp()).collect();
        let x = q1.mul(&Matrix::from_diag(&d)).mul(&q2);
        let transformed = mu.try_map(|a| Ok(a.congruence_by(&x)))?;
        let g_transformed = karcher_mean(&transformed)?.mean;
        checks.matrices_eq(
            "G(X^T A_j X) = X^T G X",
            g_transformed.as_matrix(),
            &g.as_matrix().congruence(&x),
            TOL_MEAN_IDENTITIES,
        );
    }

    // Joint homogeneity.
    {
        let alphas: Vec<f64> = (0..m).map(|_| 0.2 + 2.0 * rng.gen::<f64>()).collect();
        let mut scaled_atoms = Vec::with_capacity(m);
        for (j, atom) in mu.atoms().iter().enumerate() {
            scaled_atoms.push(atom.scale(alphas[j]));
        }
        let scaled = DiscreteMeasure::new(scaled_atoms, mu.weights().to_vec())?;
        let g_scaled = karcher_mean(&scaled)?.mean;
        let factor: f64 = mu
            .weights()
            .iter()
            .zip(&alphas)
            .map(|(w, a)| w * a.ln())
            .sum::<f64>()
            .exp();
        checks.matrices_eq(
            "G(alpha_j A_j) = prod alpha_j^{w_j} G",
            g_scaled.as_matrix(),
            &g.as_matrix().scale(factor),
            TOL_MEAN_IDENTITIES,
        );
    }

    // Self-duality.
    {
        let inverted = mu.try_map(|a| a.inverse())?;
        let g_inv = karcher_mean(&inverted)?.mean;
        checks.matrices_eq(
            "G(A_j^{-1}) = G^{-1}",
            g_inv.as_matrix(),
            g.inverse()?.as_matrix(),
            TOL_MEAN_IDENTITIES,
        );
    }

    // Arithmetic-geometric-harmonic sandwich in the Loewner order.
    checks.loewner_le("harmonic <= G", &harmonic_mean(&mu)?, g, TOL_LOEWNER)?;
    checks.loewner_le("G <= arithmetic", g, &arithmetic_mean(&mu), TOL_LOEWNER)?;

    // Monotonicity: A_j <= B_j pointwise implies G(A) <= G(B).
    {
        let bumped = mu.try_map(|a| {
            let p = random_psd(n, 0.3 + rng.gen::<f64>(), rng);
            SpdMatrix::new(a.as_matrix().add(p.as_matrix()))
        })?;
        let g_bumped = karcher_mean(&bumped)?.mean;
        checks.loewner_le("A_j <= B_j => G(A) <= G(B)", g, &g_bumped, TOL_LOEWNER)?;
    }

    let mut out = checks.outcome(format!("n={n} m={m}"));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}

pub(super) fn contraction(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let m = cfg.max_atoms.max(1);
    let mu = draw_measure(cfg, n, m, rng);
    let nu = draw_measure(cfg, n, m, rng);
    let g_mu = karcher_mean(&mu)?.mean;
    let g_nu = karcher_mean(&nu)?.mean;

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_CONTRACTION));
    let w_riem = wasserstein1_spd(&mu, &nu, MatrixGround::Riemannian)?.value;
    checks.le(
        "delta(G(mu), G(nu)) <= delta^W(mu, nu)",
        g_mu.riemannian_distance(&g_nu)?,
        w_riem,
    );
    let w_thom = wasserstein1_spd(&mu, &nu, MatrixGround::Thompson)?.value;
    checks.le(
        "d_T(G(mu), G(nu)) <= d_T^W(mu, nu)",
        g_mu.thompson_distance(&g_nu)?,
        w_thom,
    );

    let mut out = checks.outcome(format!("n={n} m={m} deltaW={w_riem:.3}"));
    emit(&mut out, cfg, "mu", &mu);
    emit(&mut out, cfg, "nu", &nu);
    Ok(out)
}

pub(super) fn lie_trotter(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let m = draw_atoms(cfg, rng).max(2);
    // Diameter <= 1: atoms exp(S_j) with ||S_j|| <= 1/2.
    let atoms: Vec<SpdMatrix> = (0..m)
        .map(|_| random_sym_with_norm(n, 0.15 + 0.35 * rng.gen::<f64>(), rng).exp())
        .collect::<CoreResult<_>>()?;
    let mu = DiscreteMeasure::uniform(atoms)?;
    let le = log_euclidean_mean(&mu)?;

    let mut gaps = Vec::new();
    for k in [2u32, 4, 6] {
        let s = 0.5_f64.powi(k as i32);
        let powered = power_pushforward(&mu, s)?;
        // Tight residual: the gap at s = 2^-6 sits near 1e-6 and the
        // 1/s-power amplifies solver error by 1/s.
        let g = karcher_mean_with(&powered, 1e-12, cartan_core::KARCHER_MAX_ITER)?.mean;
        let lifted = g.powf(1.0 / s)?;
        gaps.push(lifted.riemannian_distance(&le)?);
    }

    // Strict decrease up to a floating-point floor, then the terminal gap.
    let mut checks = Checks::new(cfg.tol.unwrap_or(1e-9));
    checks.le("gap(2^-4) <= gap(2^-2)", gaps[1], gaps[0]);
    checks.le("gap(2^-6) <= gap(2^-4)", gaps[2], gaps[1]);
    checks.le_at("gap(2^-6) < 1e-3", gaps[2], LIE_TROTTER_FLOOR, 0.0);

    let mut out = checks.outcome(format!(
        "n={n} m={m} gaps=[{:.2e},{:.2e},{:.2e}]",
        gaps[0], gaps[1], gaps[2]
    ));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}

pub(super) fn prop_3_2(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let m = draw_atoms(cfg, rng);
    // The closed form is stated for uniform measures.
    let atoms: Vec<SpdMatrix> = (0..m).map(|_| random_spd(n, cfg.cond_cap, rng)).collect();
    let mu = DiscreteMeasure::uniform(atoms)?;

    let g = vector_barycenter(&pushforward_eigen(&mu)?);
    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_PROP_3_2));
    let tol = checks.tol();
    for i in 0..n {
        let expected = mu
            .atoms()
            .iter()
            .map(|a| a.eigenvalues().map(|ev| ev.get(i).ln()))
            .sum::<CoreResult<f64>>()?
            / m as f64;
        checks.eq_rel(
            "G(lambda_* mu)_i = (prod_j lambda_i(A_j))^{1/m}",
            g.get(i),
            expected.exp(),
            tol,
        );
    }
    let mut out = checks.outcome(format!("n={n} m={m}"));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}
