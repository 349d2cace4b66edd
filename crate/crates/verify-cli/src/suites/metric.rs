//! Metric comparison and eigenvalue-map Lipschitz suites.

use rand_chacha::ChaCha8Rng;

use cartan_core::random::random_sym_with_norm;
use cartan_core::Result as CoreResult;

use crate::config::InstanceConfig;
use super::{draw_dim, draw_pair, emit, Checks, TrialOutcome, TOL_METRIC};

pub(super) fn metric_comp(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let (a, b) = draw_pair(cfg, n, rng);
    let delta = a.riemannian_distance(&b)?;
    let dt = a.thompson_distance(&b)?;

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_METRIC));
    checks.le("d_T <= delta", dt, delta);
    checks.le("delta <= sqrt(n) d_T", delta, (n as f64).sqrt() * dt);
    let mut out = checks.outcome(format!("n={n} delta={delta:.3}"));
    emit(&mut out, cfg, "a", &a);
    emit(&mut out, cfg, "b", &b);
    Ok(out)
}

pub(super) fn emi_lidskii(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let (a, b) = draw_pair(cfg, n, rng);
    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_METRIC));

    // Exponential metric increasing: the log map is metric nondecreasing
    // from the cone to the flat space of symmetric matrices.
    let log_gap = a.log()?.sub(&b.log()?).frobenius_norm();
    checks.le("||log A - log B|| <= delta(A,B)", log_gap, a.riemannian_distance(&b)?);

    // Lidskii-Wielandt on an independent symmetric pair.
    let x = random_sym_with_norm(n, 2.0, rng);
    let y = random_sym_with_norm(n, 1.5, rng);
    let lx = x.eigenvalues()?;
    let ly = y.eigenvalues()?;
    let spectral_gap = lx
        .iter()
        .zip(&ly)
        .map(|(p, q)| (p - q).powi(2))
        .sum::<f64>()
        .sqrt();
    checks.le(
        "||lambda(X) - lambda(Y)|| <= ||X - Y||",
        spectral_gap,
        x.sub(&y).frobenius_norm(),
    );

    let mut out = checks.outcome(format!("n={n}"));
    emit(&mut out, cfg, "a", &a);
    emit(&mut out, cfg, "b", &b);
    Ok(out)
}

pub(super) fn eig_contract(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let n = draw_dim(cfg, rng);
    let (a, b) = draw_pair(cfg, n, rng);
    let la = a.eigenvalues()?;
    let lb = b.eigenvalues()?;

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_METRIC));
    checks.le(
        "delta(lambda(A), lambda(B)) <= delta(A,B)",
        la.log_l2_distance(&lb)?,
        a.riemannian_distance(&b)?,
    );
    checks.le(
        "d_T(lambda(A), lambda(B)) <= d_T(A,B)",
        la.log_linf_distance(&lb)?,
        a.thompson_distance(&b)?,
    );
    let mut out = checks.outcome(format!("n={n}"));
    emit(&mut out, cfg, "a", &a);
    emit(&mut out, cfg, "b", &b);
    Ok(out)
}
