//! Symplectic-eigenvalue suites: majorization chains for the extended
//! map, the Williamson decomposition, the top-eigenvalue criterion, the
//! compound-matrix prefix identity, and the report-only conjecture
//! margins.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cartan_core::barycenter::{
    karcher_mean, log_euclidean_mean, power_pushforward, product_barycenter_measure,
    vector_barycenter,
};
use cartan_core::majorization::log_majorizes;
use cartan_core::measure::DiscreteMeasure;
use cartan_core::random::{random_psd, random_spd, random_spd_measure, random_symplectic};
use cartan_core::spd::SpdMatrix;
use cartan_core::symplectic::{
    extended_symplectic_map, symplectic_eigenvalues, symplectic_prefix_product,
    top_symplectic_bound_holds, williamson,
};
use cartan_core::Result as CoreResult;

use crate::config::InstanceConfig;
use super::{
    draw_half_dim, draw_measure, emit, Checks, TrialOutcome, TOL_COMPOUND, TOL_EXTENDED_MONOTONE,
    TOL_F43_BAND, TOL_LOG_MAJORIZATION, TOL_METRIC, TOL_WILLIAMSON,
};

fn extended_pushforward(
    mu: &DiscreteMeasure<SpdMatrix>,
) -> CoreResult<DiscreteMeasure<cartan_core::OrderedPositiveVector>> {
    mu.try_map(extended_symplectic_map)
}

/// Power-map chain for the extended map over uniform measures, plus the
/// monotonicity and Lipschitz statements that drive it.
pub(super) fn thm_main_symp(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng);
    let n = 2 * half;
    let m = rng.gen_range(1..=cfg.max_atoms);
    let mu = random_spd_measure(n, m, cfg.cond_cap, true, rng);

    let g_pushed = vector_barycenter(&extended_pushforward(&mu)?);
    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_LOG_MAJORIZATION));
    for &r in &cfg.r_grid {
        let lifted = extended_symplectic_map(&karcher_mean(&power_pushforward(&mu, r)?)?.mean)?
            .powf(1.0 / r);
        checks.log_major("dd^{1/r}(G(mu^r)) <_log G(dd_* mu)", &lifted, &g_pushed)?;
    }

    // Monotonicity of dd under a positive semidefinite bump, and the two
    // Lipschitz bounds.
    let a = random_spd(n, cfg.cond_cap, rng);
    let bump = random_psd(n, 0.3 + rng.gen::<f64>(), rng);
    let b = SpdMatrix::new(a.as_matrix().add(bump.as_matrix()))?;
    let dd_a = extended_symplectic_map(&a)?;
    let dd_b = extended_symplectic_map(&b)?;
    for i in 0..n {
        checks.le_at(
            "A <= B => dd(A) <= dd(B)",
            dd_a.get(i),
            dd_b.get(i),
            TOL_EXTENDED_MONOTONE,
        );
    }
    let c = random_spd(n, cfg.cond_cap, rng);
    let dd_c = extended_symplectic_map(&c)?;
    checks.le_at(
        "d_T(dd(A), dd(C)) <= d_T(A, C)",
        dd_a.log_linf_distance(&dd_c)?,
        a.thompson_distance(&c)?,
        TOL_METRIC,
    );
    checks.le_at(
        "delta(dd(A), dd(C)) <= sqrt(2n) delta(A, C)",
        dd_a.log_l2_distance(&dd_c)?,
        (n as f64).sqrt() * a.riemannian_distance(&c)?,
        TOL_METRIC,
    );

    // Symplectic congruence invariance of the spectrum.
    let s = random_symplectic(half, rng);
    let congruent = a.congruence_by(&s);
    let dd_congruent = extended_symplectic_map(&congruent)?;
    for i in 0..n {
        checks.eq_rel(
            "dd(S^T A S) = dd(A)",
            dd_congruent.get(i),
            dd_a.get(i),
            TOL_WILLIAMSON,
        );
    }

    let mut out = checks.outcome(format!("2n={n} m={m}"));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}

/// Weighted tuple form of the extended-map chain, `r` sweeping up to 1.
pub(super) fn lemma_4_4(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng);
    let n = 2 * half;
    let m = rng.gen_range(1..=cfg.max_atoms);
    // Weighted means are the point of this statement.
    let mu = random_spd_measure(n, m, cfg.cond_cap, false, rng);

    let dd_atoms = extended_pushforward(&mu)?;
    let rhs = vector_barycenter(&dd_atoms);

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_LOG_MAJORIZATION));
    let mut grid = cfg.r_grid.clone();
    if grid.iter().all(|&r| (r - 1.0).abs() > 1e-15) {
        grid.push(1.0);
    }
    for &r in &grid {
        let lifted = extended_symplectic_map(&karcher_mean(&power_pushforward(&mu, r)?)?.mean)?
            .powf(1.0 / r);
        checks.log_major(
            "dd^{1/r}(G_w(A^r)) <_log G_w(dd(A))",
            &lifted,
            &rhs,
        )?;
    }
    let mut out = checks.outcome(format!("2n={n} m={m}"));
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}

/// Boolean agreement of the semidefinite criterion with the top extended
/// eigenvalue, across an alpha sweep straddling it.
pub(super) fn criterion_f43(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng);
    let a = random_spd(2 * half, cfg.cond_cap, rng);
    let d1 = extended_symplectic_map(&a)?.get(0);

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_F43_BAND));
    let band = TOL_F43_BAND;
    for rel in [-0.1, -0.01, -1e-5, -1e-6, 1e-6, 1e-5, 0.01, 0.1] {
        let alpha = d1 * (1.0 + rel);
        let psd_says = top_symplectic_bound_holds(&a, alpha)?;
        let spectrum_says = d1 <= alpha * (1.0 + 1e-9);
        let distance_from_band = rel.abs() - band;
        // Inside the band disagreement is tolerated (and not scored).
        if distance_from_band <= 0.0 {
            continue;
        }
        let margin = if psd_says == spectrum_says {
            distance_from_band
        } else {
            -distance_from_band
        };
        checks.le_at(
            "criterion agrees with dd_1 outside the band",
            0.0,
            margin,
            0.0,
        );
    }
    // Equality point: must hold at alpha slightly above d1.
    let at_top = top_symplectic_bound_holds(&a, d1 * (1.0 + 10.0 * band))?;
    checks.le_at("criterion true just above dd_1", 0.0, if at_top { 1.0 } else { -1.0 }, 0.0);

    let mut out = checks.outcome(format!("2n={} dd10={d1:.4}", 2 * half));
    emit(&mut out, cfg, "a", &a);
    Ok(out)
}

/// Compound-lift identity for every prefix length.
pub(super) fn compound_prefix(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng).min(3);
    let n = 2 * half;
    let a = random_spd(n, cfg.cond_cap, rng);
    let ext = extended_symplectic_map(&a)?;

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_COMPOUND));
    let tol = checks.tol();
    for k in 1..=n {
        let lifted = symplectic_prefix_product(&a, k)?;
        let direct: f64 = ext.values()[..k].iter().product();
        checks.push_rel_gap(
            "prod_{i<=k} dd_i = lifted lambda_1^{1/2}",
            lifted,
            direct,
            tol,
        );
    }
    let mut out = checks.outcome(format!("2n={n}"));
    emit(&mut out, cfg, "a", &a);
    Ok(out)
}

/// Williamson invariants and the consistency of its D with the spectrum.
pub(super) fn williamson_suite(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng);
    let n = 2 * half;
    let a = random_spd(n, cfg.cond_cap, rng);
    let w = williamson(&a)?;
    let spectrum = symplectic_eigenvalues(&a)?;

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_WILLIAMSON));
    let tol = checks.tol();
    let j = cartan_core::symplectic::standard_j(half);
    let symp_residual = w.m.transpose().mul(&j).mul(&w.m).sub(&j).frobenius_norm();
    checks.le_at("M^T J M = J", symp_residual, tol, 0.0);

    let rebuilt = w.m.transpose().mul(&w.d_block()).mul(&w.m);
    let rec_residual =
        rebuilt.sub(a.as_matrix()).frobenius_norm() / a.as_matrix().frobenius_norm();
    checks.le_at("M^T diag(D,D) M = A", rec_residual, tol, 0.0);

    for (got, want) in w.d.iter().zip(&spectrum.d) {
        checks.push_rel_gap("Williamson D matches the spectrum", *got, *want, tol);
    }

    let mut out = checks.outcome(format!("2n={n}"));
    emit(&mut out, cfg, "a", &a);
    Ok(out)
}

/// Multi-measure chain for the extended map.
pub(super) fn thm_5_2(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng).min(2);
    let n = 2 * half;
    let measures: Vec<DiscreteMeasure<SpdMatrix>> = (0..cfg.measures)
        .map(|_| {
            let support = rng.gen_range(1..=cfg.max_support);
            draw_measure(cfg, n, support, rng)
        })
        .collect();

    let lambda = product_barycenter_measure(&measures)?;
    let dd_g = extended_symplectic_map(&karcher_mean(&lambda)?.mean)?;
    let g_pushed_lambda = vector_barycenter(&extended_pushforward(&lambda)?);

    let pushed: Vec<_> = measures
        .iter()
        .map(extended_pushforward)
        .collect::<CoreResult<Vec<_>>>()?;
    let g_lambda_pushed = vector_barycenter(&product_barycenter_measure(&pushed)?);

    let mut checks = Checks::new(cfg.tol.unwrap_or(TOL_LOG_MAJORIZATION));
    checks.log_major(
        "dd(G(Lambda)) <_log G(dd_* Lambda)",
        &dd_g,
        &g_pushed_lambda,
    )?;
    checks.log_major(
        "G(dd_* Lambda) <_log G(Lambda(dd_* mu_j))",
        &g_pushed_lambda,
        &g_lambda_pushed,
    )?;

    let shape: Vec<usize> = measures.iter().map(|m| m.len()).collect();
    let mut out = checks.outcome(format!("2n={n} supports={shape:?}"));
    for (j_idx, measure) in measures.iter().enumerate() {
        emit(&mut out, cfg, &format!("mu{j_idx}"), measure);
    }
    Ok(out)
}

/// Report-only: raw worst prefix slacks of the three open majorizations,
/// with a condition-cap ladder reaching 1e8. Never asserts.
pub(super) fn conjectures_abc(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> CoreResult<TrialOutcome> {
    let half = draw_half_dim(cfg, rng).max(2);
    let n = 2 * half;
    let ladder = [cfg.cond_cap, 1e2, 1e4, 1e6, 1e8];
    let cond = ladder[rng.gen_range(0..ladder.len())];
    let m = rng.gen_range(2..=cfg.max_atoms.max(2));
    let mu = random_spd_measure(n, m, cond, false, rng);

    let g_pushed = vector_barycenter(&extended_pushforward(&mu)?);
    let g = karcher_mean(&mu)?.mean;
    let le = log_euclidean_mean(&mu)?;

    let mut worst_a = f64::INFINITY;
    let mut worst_b = f64::INFINITY;
    for &r in &cfg.r_grid {
        if (r - 1.0).abs() < 1e-15 {
            continue;
        }
        let g_r = karcher_mean(&power_pushforward(&mu, r)?)?.mean;
        // (a) dd of the 1/r-powered barycenter against G(dd_* mu).
        let dd_a = extended_symplectic_map(&g_r.powf(1.0 / r)?)?;
        worst_a = worst_a.min(log_majorizes(&dd_a, &g_pushed, 0.0)?.worst_prefix_margin);
        // (b) dd(G(mu)^r) against dd(G(mu^r)).
        let lhs_b = extended_symplectic_map(&g.powf(r)?)?;
        let rhs_b = extended_symplectic_map(&g_r)?;
        worst_b = worst_b.min(log_majorizes(&lhs_b, &rhs_b, 0.0)?.worst_prefix_margin);
    }
    // (c) dd of the log-Euclidean mean against G(dd_* mu).
    let dd_le = extended_symplectic_map(&le)?;
    let worst_c = log_majorizes(&dd_le, &g_pushed, 0.0)?.worst_prefix_margin;

    let margin = worst_a.min(worst_b).min(worst_c);
    let mut out = TrialOutcome {
        margin,
        pass: true,
        note: format!(
            "2n={n} m={m} cond={cond:.0e} slack a={worst_a:.3e} b={worst_b:.3e} c={worst_c:.3e}"
        ),
        instances: Vec::new(),
    };
    emit(&mut out, cfg, "mu", &mu);
    Ok(out)
}
