//! Eigenvalue log-majorization chains for barycenters, including the
//! multi-measure enumeration.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cartan_core::barycenter::{
    karcher_mean, log_euclidean_mean, power_pushforward, product_barycenter_measure,
    pushforward_eigen, vector_barycenter,
};
use cartan_core::measure::DiscreteMeasure;
use cartan_core::spd::SpdMatrix;
use cartan_core::Result as CoreResult;

use crate::config::InstanceConfig;
use super::{draw_atoms, draw_dim, draw_measure, emit, Checks, TrialOutcome, TOL_LOG_MAJORIZATION};

/// The full eigenvalue chain: barycenter, power-map barycenters, the
/// log-Euclidean (Lie-Trotter) mean, and the orthant barycenter of the
/// eigenvalue push-forward.
pub(super) fn thm_main_eig(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let m = draw_atoms(cfg, rng);
    let mu = draw_measure(cfg, n, m, rng);

    let lam_g = karcher_mean(&mu)?.mean.eigenvalues()?;
    let le = log_euclidean_mean(&mu)?;
    let lam_le = le.eigenvalues()?;
    let g_pushed = vector_barycenter(&pushforward_eigen(&mu)?);

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_LOG_MAJORIZATION));
    for &r in &cfg.r_grid {
        let lam_r = karcher_mean(&power_pushforward(&mu, r)?)?
            .mean
            .eigenvalues()?
            .powf(1.0 / r);
        checks.log_major("lambda(G(mu)) <_log lambda^{1/r}(G(mu^r))", &lam_g, &lam_r)?;
        checks.log_major(
            "lambda^{1/r}(G(mu^r)) <_log lambda(exp E[log A])",
            &lam_r,
            &lam_le,
        )?;
    }
    checks.log_major(
        "lambda(exp E[log A]) <_log G(lambda_* mu)",
        &lam_le,
        &g_pushed,
    )?;

    let mut out = checks.outcome(format!("n={n} m={m}"));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}

/// Multi-measure chain on fully enumerated product supports.
pub(super) fn thm_5_1(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let measures: Vec<DiscreteMeasure<SpdMatrix>> = (0..cfg.measures)
        .map(|_| {
            let support = rng.gen_range(1..=cfg.max_support);
            draw_measure(cfg, n, support, rng)
        })
        .collect();

    let lambda = product_barycenter_measure(&measures)?;
    let lam_g = karcher_mean(&lambda)?.mean.eigenvalues()?;
    let g_pushed_lambda = vector_barycenter(&pushforward_eigen(&lambda)?);

    let pushed: Vec<_> = measures
        .iter()
        .map(pushforward_eigen)
        .collect::<CoreResult<Vec<_>>>()?;
    let lambda_of_pushed = product_barycenter_measure(&pushed)?;
    let g_lambda_pushed = vector_barycenter(&lambda_of_pushed);

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_LOG_MAJORIZATION));
    checks.log_major(
        "lambda(G(Lambda)) <_log G(lambda_* Lambda)",
        &lam_g,
        &g_pushed_lambda,
    )?;
    checks.log_major(
        "G(lambda_* Lambda) <_log G(Lambda(lambda_* mu_j))",
        &g_pushed_lambda,
        &g_lambda_pushed,
    )?;

    let shape: Vec<usize> = measures.iter().map(|m| m.len()).collect();
    let mut out = checks.outcome(format!("n={n} supports={shape:?}"));
    for (j, measure) in measures.iter().enumerate() {
        emit(&mut out, cfg, &format!("mu{j}"), measure);
    }
    Ok(out)
}
