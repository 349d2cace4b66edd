//! Verification harness for the SPD-geometry library: seeded random
//! instance generation, one suite per theorem-grade statement, and
//! machine-readable pass/fail reports with replayable failure seeds.

pub mod config;
pub mod report;
pub mod rng;
pub mod suites;

pub use config::{InstanceConfig, WeightMode};
pub use report::{FailureRecord, SuiteReport, SuiteRun, TrialRecord};
pub use suites::{find_suite, run_suite, suite_names, SuiteError, SUITES};

/// Re-exported generator behind the CLI's `random_spd` contract.
pub use cartan_core::random::random_spd;
