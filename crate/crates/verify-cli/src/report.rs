//! Suite reports: one JSON object per suite, one CSV row per trial.

use serde::Serialize;

use crate::config::InstanceConfig;

/// A failed trial, replayable from its recorded seed.
#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub seed: u64,
    pub margin: f64,
    pub note: String,
}

/// Machine-readable result of one suite run.
///
/// `worst_margin` is the minimum margin over all trials; a trial's margin
/// measures the room left before its tightest check would fail at the
/// suite tolerance (margin >= 0 means every check held). Raw slack of an
/// inequality check is `margin - tol`.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub anchor: String,
    pub trials: usize,
    pub passes: usize,
    pub worst_margin: f64,
    pub failures: Vec<FailureRecord>,
    pub wall_time: f64,
    pub config: InstanceConfig,
}

/// Per-trial record backing the CSV output.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub suite: String,
    pub seed: u64,
    pub margin: f64,
    pub pass: bool,
}

/// A suite run: the aggregate report plus the per-trial records and any
/// serialized instances collected for `--emit-instances`.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub report: SuiteReport,
    pub trial_records: Vec<TrialRecord>,
    pub instances: Vec<InstanceDump>,
}

/// One serialized instance artifact.
#[derive(Debug, Clone)]
pub struct InstanceDump {
    pub trial: usize,
    pub name: String,
    pub value: serde_json::Value,
}

impl SuiteRun {
    pub fn failed(&self) -> bool {
        !self.report.failures.is_empty()
    }
}

pub const CSV_HEADER: &str = "suite,seed,margin,pass";

pub fn csv_row(record: &TrialRecord) -> String {
    format!(
        "{},{},{:e},{}",
        record.suite, record.seed, record.margin, record.pass
    )
}
