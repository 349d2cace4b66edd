//! Suite registry and the shared margin bookkeeping.
//!
//! Margin convention: every check contributes a margin that is >= 0
//! exactly when the check holds at its tolerance.
//!   - inequality `lhs <= rhs` with slack tolerance `tol`:
//!     margin = (rhs - lhs) + tol, so raw slack = margin - tol;
//!   - equality `|x - y| <= tol` (absolute or relative):
//!     margin = tol - |x - y|;
//!   - log-majorization at tolerance `tol`: the minimum of the prefix
//!     margins `(sum_log_b(k) - sum_log_a(k)) + tol` over `k < n` and the
//!     total-product margin `tol - |sum_log_a(n) - sum_log_b(n)|`.
//!
//! A trial's margin is the minimum over its checks; the report's
//! `worst_margin` is the minimum over trials.

mod eigen;
mod karcher;
mod metric;
mod symplectic;

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cartan_core::majorization::{log_majorizes, OrderedPositiveVector};
use cartan_core::measure::DiscreteMeasure;
use cartan_core::random::{random_spd, random_spd_measure};
use cartan_core::spd::SpdMatrix;
use cartan_core::Result as CoreResult;

use crate::config::{InstanceConfig, WeightMode};
use crate::report::{FailureRecord, InstanceDump, SuiteReport, SuiteRun, TrialRecord};
use crate::rng::trial_rng;

// Pinned default tolerances, per suite family.
pub const TOL_METRIC: f64 = 1e-10;
pub const TOL_LOG_MAJORIZATION: f64 = 1e-8;
pub const TOL_KARCHER_RESIDUAL: f64 = 1e-11;
pub const TOL_DETERMINANT_IDENTITY: f64 = 1e-9;
pub const TOL_TWO_ATOM_GEODESIC: f64 = 1e-9;
pub const TOL_COMMUTING_FAMILY: f64 = 1e-10;
pub const TOL_MEAN_IDENTITIES: f64 = 1e-8;
pub const TOL_LOEWNER: f64 = 1e-9;
pub const TOL_CONTRACTION: f64 = 1e-8;
pub const TOL_WILLIAMSON: f64 = 1e-8;
pub const TOL_COMPOUND: f64 = 1e-7;
pub const TOL_F43_BAND: f64 = 1e-7;
pub const TOL_EXTENDED_MONOTONE: f64 = 1e-9;
pub const TOL_PROP_3_2: f64 = 1e-10;
pub const LIE_TROTTER_FLOOR: f64 = 1e-3;

/// Result of one trial.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub margin: f64,
    pub pass: bool,
    pub note: String,
    pub instances: Vec<(String, serde_json::Value)>,
}

/// Margin accumulator for one trial.
pub struct Checks {
    tol: f64,
    margin: f64,
    tightest: String,
}

impl Checks {
    pub fn new(tol: f64) -> Self {
        Checks {
            tol,
            margin: f64::INFINITY,
            tightest: String::new(),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn push(&mut self, label: &str, margin: f64) {
        if margin < self.margin {
            self.margin = margin;
            self.tightest = label.to_string();
        }
    }

    /// `lhs <= rhs` at the accumulator tolerance.
    pub fn le(&mut self, label: &str, lhs: f64, rhs: f64) {
        self.push(label, rhs - lhs + self.tol);
    }

    /// `lhs <= rhs` at an explicit tolerance.
    pub fn le_at(&mut self, label: &str, lhs: f64, rhs: f64, tol: f64) {
        self.push(label, rhs - lhs + tol);
    }

    /// `|got - want| <= tol` (absolute).
    pub fn eq_abs(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.push(label, tol - (got - want).abs());
    }

    /// `|got - want| <= tol * (1 + |want|)`.
    pub fn eq_rel(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.push(label, tol - (got - want).abs() / (1.0 + want.abs()));
    }

    /// `|got - want| <= tol * |want|` (strictly relative).
    pub fn push_rel_gap(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.push(
            label,
            tol - (got - want).abs() / want.abs().max(f64::MIN_POSITIVE),
        );
    }

    /// Relative Frobenius agreement of two matrices.
    pub fn matrices_eq(
        &mut self,
        label: &str,
        got: &cartan_core::Matrix,
        want: &cartan_core::Matrix,
        tol: f64,
    ) {
        let err = got.sub(want).frobenius_norm() / want.frobenius_norm().max(1.0);
        self.push(label, tol - err);
    }

    /// `a <_log b` at the accumulator tolerance (absolute, log domain).
    pub fn log_major(
        &mut self,
        label: &str,
        a: &OrderedPositiveVector,
        b: &OrderedPositiveVector,
    ) -> CoreResult<()> {
        let check = log_majorizes(a, b, self.tol)?;
        let prefix = if check.worst_prefix_margin.is_finite() {
            check.worst_prefix_margin + self.tol
        } else {
            f64::INFINITY
        };
        self.push(label, prefix.min(self.tol - check.total_gap));
        Ok(())
    }

    /// Loewner order `lhs <= rhs` via the minimum eigenvalue of the
    /// difference.
    pub fn loewner_le(
        &mut self,
        label: &str,
        lhs: &SpdMatrix,
        rhs: &SpdMatrix,
        slack: f64,
    ) -> CoreResult<()> {
        let diff = rhs.as_matrix().sub(lhs.as_matrix());
        let min_eig = cartan_core::eig::jacobi_eig(&diff)?.min_value();
        self.push(label, min_eig + slack);
        Ok(())
    }

    pub fn outcome(self, note: String) -> TrialOutcome {
        let pass = self.margin >= 0.0;
        let note = if self.tightest.is_empty() {
            note
        } else {
            format!("{note}; tightest: {}", self.tightest)
        };
        TrialOutcome {
            margin: self.margin,
            pass,
            note,
            instances: Vec::new(),
        }
    }
}

// Shared instance-drawing helpers.

pub(crate) fn draw_dim(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> usize {
    if cfg.max_dim <= 2 {
        cfg.max_dim.max(2)
    } else {
        rng.gen_range(2..=cfg.max_dim)
    }
}

pub(crate) fn draw_half_dim(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=cfg.max_dim)
}

pub(crate) fn draw_atoms(cfg: &InstanceConfig, rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=cfg.max_atoms)
}

pub(crate) fn draw_measure(
    cfg: &InstanceConfig,
    n: usize,
    atoms: usize,
    rng: &mut ChaCha8Rng,
) -> DiscreteMeasure<SpdMatrix> {
    random_spd_measure(
        n,
        atoms,
        cfg.cond_cap,
        cfg.weight_mode == WeightMode::Uniform,
        rng,
    )
}

pub(crate) fn draw_pair(
    cfg: &InstanceConfig,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (SpdMatrix, SpdMatrix) {
    (
        random_spd(n, cfg.cond_cap, rng),
        random_spd(n, cfg.cond_cap, rng),
    )
}

pub(crate) fn emit(
    out: &mut TrialOutcome,
    cfg: &InstanceConfig,
    name: &str,
    value: impl serde::Serialize,
) {
    if cfg.emit_instances {
        out.instances.push((name.to_string(), json!(value)));
    }
}

type TrialRunner = fn(&InstanceConfig, &mut ChaCha8Rng) -> CoreResult<TrialOutcome>;

/// A registered suite: an id, the statement it checks (echoed verbatim in
/// the report header), and the per-trial runner.
pub struct SuiteDef {
    pub name: &'static str,
    pub anchor: &'static str,
    pub report_only: bool,
    runner: TrialRunner,
}

pub const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "metric-comp",
        anchor: "d_T(A,B) <= delta(A,B) <= sqrt(n) * d_T(A,B)",
        report_only: false,
        runner: metric::metric_comp,
    },
    SuiteDef {
        name: "emi-lidskii",
        anchor: "||log A - log B||_2 <= delta(A,B); ||lambda(X) - lambda(Y)||_2 <= ||X - Y||_2",
        report_only: false,
        runner: metric::emi_lidskii,
    },
    SuiteDef {
        name: "eig-contract",
        anchor: "delta(lambda(A), lambda(B)) <= delta(A,B); d_T(lambda(A), lambda(B)) <= d_T(A,B)",
        report_only: false,
        runner: metric::eig_contract,
    },
    SuiteDef {
        name: "thm-main-eig",
        anchor: "lambda(G(mu)) <_log lambda^{1/r}(G(mu^r)) <_log lambda(exp E_mu[log A]) <_log G(lambda_* mu)",
        report_only: false,
        runner: eigen::thm_main_eig,
    },
    SuiteDef {
        name: "thm-main-symp",
        anchor: "dd^{1/r}(G(mu^r)) <_log G(dd_* mu) for 0 < r <= 1, uniform mu",
        report_only: false,
        runner: symplectic::thm_main_symp,
    },
    SuiteDef {
        name: "lemma-4-4",
        anchor: "dd^{1/r}(G_w(A_1^r,...,A_m^r)) <_log G_w(dd(A_1),...,dd(A_m)) for weights w",
        report_only: false,
        runner: symplectic::lemma_4_4,
    },
    SuiteDef {
        name: "criterion-f43",
        anchor: "dd_1(A) <= alpha  iff  J^T A J <= alpha^2 A^{-1}",
        report_only: false,
        runner: symplectic::criterion_f43,
    },
    SuiteDef {
        name: "compound-prefix",
        anchor: "prod_{i<=k} dd_i(A) = lambda_1^{1/2}((^k A)^{1/2} (^k J)^T (^k A) (^k J) (^k A)^{1/2})",
        report_only: false,
        runner: symplectic::compound_prefix,
    },
    SuiteDef {
        name: "karcher-props",
        anchor: "Karcher mean identities: residual, determinant, two-atom geodesic, commuting families, congruence, homogeneity, self-duality, A-G-H, monotonicity",
        report_only: false,
        runner: karcher::karcher_props,
    },
    SuiteDef {
        name: "contraction",
        anchor: "delta(G(mu), G(nu)) <= delta^W(mu, nu); d_T(G(mu), G(nu)) <= d_T^W(mu, nu)",
        report_only: false,
        runner: karcher::contraction,
    },
    SuiteDef {
        name: "lie-trotter",
        anchor: "delta(G(mu^s)^{1/s}, exp E_mu[log A]) decreases along s = 2^-2, 2^-4, 2^-6 and drops below 1e-3",
        report_only: false,
        runner: karcher::lie_trotter,
    },
    SuiteDef {
        name: "prop-3-2",
        anchor: "G(lambda_* mu) = ((prod_j lambda_i(A_j))^{1/m})_i for uniform mu",
        report_only: false,
        runner: karcher::prop_3_2,
    },
    SuiteDef {
        name: "thm-5-1",
        anchor: "lambda(G(Lambda(mu_1..mu_m))) <_log G(lambda_* Lambda(mu_1..mu_m)) <_log G(Lambda(lambda_* mu_1..lambda_* mu_m))",
        report_only: false,
        runner: eigen::thm_5_1,
    },
    SuiteDef {
        name: "thm-5-2",
        anchor: "dd(G(Lambda(mu_1..mu_m))) <_log G(dd_* Lambda(mu_1..mu_m)) <_log G(Lambda(dd_* mu_1..dd_* mu_m))",
        report_only: false,
        runner: symplectic::thm_5_2,
    },
    SuiteDef {
        name: "williamson",
        anchor: "A = M^T diag(D,D) M with M^T J M = J and D the symplectic spectrum",
        report_only: false,
        runner: symplectic::williamson_suite,
    },
    SuiteDef {
        name: "conjectures-abc",
        anchor: "exploratory margins: (a) dd(G(mu^r)^{1/r}) vs G(dd_* mu); (b) dd(G(mu)^r) vs dd(G(mu^r)); (c) dd(exp E_mu[log X]) vs G(dd_* mu) -- report-only",
        report_only: true,
        runner: symplectic::conjectures_abc,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn find_suite(name: &str) -> Option<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name)
}

/// CLI-level errors; anything else is a per-trial failure inside a report.
#[derive(Debug)]
pub enum SuiteError {
    UnknownSuite(String),
    InvalidConfig(String),
}

impl std::fmt::Display for SuiteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuiteError::UnknownSuite(name) => write!(f, "unknown suite '{name}'"),
            SuiteError::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for SuiteError {}

/// Runs a suite: independent seeded trials, aggregated by minimum margin,
/// failures sorted by seed. Deterministic for a fixed config and seed
/// (wall time aside).
pub fn run_suite(name: &str, cfg: &InstanceConfig) -> Result<SuiteRun, SuiteError> {
    let def = find_suite(name).ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    cfg.validate().map_err(SuiteError::InvalidConfig)?;
    if matches!(def.name, "thm-5-1" | "thm-5-2") {
        let size = cfg.max_support.pow(cfg.measures as u32);
        if size > cartan_core::PRODUCT_SUPPORT_CAP {
            return Err(SuiteError::InvalidConfig(format!(
                "product support bound {size} exceeds cap {}",
                cartan_core::PRODUCT_SUPPORT_CAP
            )));
        }
    }

    let start = Instant::now();
    let mut trial_records = Vec::with_capacity(cfg.trials);
    let mut failures = Vec::new();
    let mut instances = Vec::new();
    let mut worst_margin = f64::INFINITY;
    let mut passes = 0usize;

    for trial in 0..cfg.trials {
        let (seed, mut rng) = trial_rng(cfg.seed, trial as u64);
        let outcome = match (def.runner)(cfg, &mut rng) {
            Ok(outcome) => outcome,
            Err(err) => TrialOutcome {
                margin: if def.report_only { f64::INFINITY } else { f64::NEG_INFINITY },
                pass: def.report_only,
                note: format!("error: {err}"),
                instances: Vec::new(),
            },
        };
        let pass = outcome.pass || def.report_only;
        if outcome.margin < worst_margin {
            worst_margin = outcome.margin;
        }
        if pass {
            passes += 1;
        } else {
            failures.push(FailureRecord {
                seed,
                margin: outcome.margin,
                note: outcome.note.clone(),
            });
        }
        trial_records.push(TrialRecord {
            suite: def.name.to_string(),
            seed,
            margin: outcome.margin,
            pass,
        });
        for (name, value) in outcome.instances {
            instances.push(InstanceDump { trial, name, value });
        }
    }

    failures.sort_by_key(|f| f.seed);
    let report = SuiteReport {
        suite: def.name.to_string(),
        anchor: def.anchor.to_string(),
        trials: cfg.trials,
        passes,
        worst_margin,
        failures,
        wall_time: start.elapsed().as_secs_f64(),
        config: cfg.clone(),
    };
    Ok(SuiteRun {
        report,
        trial_records,
        instances,
    })
}
