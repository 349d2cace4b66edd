//! `verify`: runs per-theorem verification suites on seeded random
//! instances and writes machine-readable reports.
//!
//! Exit codes: 0 when every non-report-only suite passes, 1 on any
//! failure, 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cartan_verify::config::{InstanceConfig, WeightMode};
use cartan_verify::report::{csv_row, CSV_HEADER};
use cartan_verify::suites::{run_suite, suite_names, SuiteError, SUITES};
use cartan_verify::SuiteRun;

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Randomized and enumerated verification suites for SPD-cone barycenter geometry"
)]
struct Cli {
    /// Suite id or 'all'.
    #[arg(long)]
    suite: String,

    /// Trials per suite.
    #[arg(long, default_value_t = 100)]
    trials: usize,

    /// Dimension bound: per-trial dimension is drawn from 2..=n
    /// (half-dimension 1..=n for symplectic suites).
    #[arg(long, default_value_t = 4)]
    n: usize,

    /// Atom-count bound for measure suites.
    #[arg(long, default_value_t = 3)]
    m: usize,

    /// Comma-separated power-map exponents in (0, 1].
    #[arg(long, default_value = "0.25,0.5,0.75")]
    r: String,

    /// Master seed; trial streams derive from (seed, trial index).
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// Tolerance override (per-suite defaults apply when omitted).
    #[arg(long)]
    tol: Option<f64>,

    /// Condition-number cap for generated SPD matrices.
    #[arg(long = "cond-cap", default_value_t = 1e4)]
    cond_cap: f64,

    /// Report JSON path (single object, or an array for --suite all).
    #[arg(long)]
    out: Option<PathBuf>,

    /// CSV path: one row per trial (suite, seed, margin, pass).
    #[arg(long)]
    csv: Option<PathBuf>,

    /// Directory for per-trial instance JSON dumps.
    #[arg(long = "emit-instances")]
    emit_instances: Option<PathBuf>,

    /// Measure count for the multi-measure suites.
    #[arg(long, default_value_t = 2)]
    measures: usize,

    /// Support-size bound per measure for the multi-measure suites.
    #[arg(long, default_value_t = 2)]
    k: usize,

    /// Weighting of generated measures.
    #[arg(long, default_value = "random", value_parser = parse_weights)]
    weights: WeightMode,
}

fn parse_r_grid(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad r value '{tok}': {e}"))
        })
        .collect()
}

fn parse_weights(s: &str) -> Result<WeightMode, String> {
    match s {
        "uniform" => Ok(WeightMode::Uniform),
        "random" => Ok(WeightMode::Random),
        other => Err(format!("weight mode must be uniform|random, got '{other}'")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with its own success exit.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    let r_grid = match parse_r_grid(&cli.r) {
        Ok(grid) => grid,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let config = InstanceConfig {
        trials: cli.trials,
        max_dim: cli.n,
        max_atoms: cli.m,
        measures: cli.measures,
        max_support: cli.k,
        r_grid,
        weight_mode: cli.weights,
        cond_cap: cli.cond_cap,
        seed: cli.seed,
        tol: cli.tol,
        emit_instances: cli.emit_instances.is_some(),
    };

    let names: Vec<&str> = if cli.suite == "all" {
        suite_names()
    } else {
        vec![cli.suite.as_str()]
    };

    let mut runs: Vec<SuiteRun> = Vec::new();
    for name in &names {
        match run_suite(name, &config) {
            Ok(run) => {
                let r = &run.report;
                println!(
                    "suite {}: {}/{} passed, worst margin {:.3e}, {:.2}s",
                    r.suite, r.passes, r.trials, r.worst_margin, r.wall_time
                );
                println!("  anchor: {}", r.anchor);
                for f in r.failures.iter().take(5) {
                    println!("  FAIL seed={} margin={:.3e} {}", f.seed, f.margin, f.note);
                }
                runs.push(run);
            }
            Err(err @ SuiteError::UnknownSuite(_)) => {
                eprintln!("{err}");
                eprintln!("available suites: {}", suite_names().join(", "));
                return ExitCode::from(2);
            }
            Err(err) => {
                eprintln!("{err}");
                return ExitCode::from(2);
            }
        }
    }

    if let Some(path) = &cli.out {
        let json = if cli.suite == "all" {
            serde_json::to_string_pretty(&runs.iter().map(|r| &r.report).collect::<Vec<_>>())
        } else {
            serde_json::to_string_pretty(&runs[0].report)
        }
        .expect("reports serialize");
        if let Err(e) = fs::write(path, json) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    if let Some(path) = &cli.csv {
        let mut csv = String::from(CSV_HEADER);
        csv.push('\n');
        for run in &runs {
            for record in &run.trial_records {
                csv.push_str(&csv_row(record));
                csv.push('\n');
            }
        }
        if let Err(e) = fs::write(path, csv) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    if let Some(dir) = &cli.emit_instances {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("cannot create {}: {e}", dir.display());
            return ExitCode::from(2);
        }
        for run in &runs {
            for dump in &run.instances {
                let file = dir.join(format!(
                    "{}-trial{:04}-{}.json",
                    run.report.suite, dump.trial, dump.name
                ));
                if let Err(e) = fs::write(&file, serde_json::to_string_pretty(&dump.value).unwrap())
                {
                    eprintln!("cannot write {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            }
        }
    }

    let report_only: std::collections::HashSet<&str> = SUITES
        .iter()
        .filter(|s| s.report_only)
        .map(|s| s.name)
        .collect();
    let any_failure = runs
        .iter()
        .any(|run| !report_only.contains(run.report.suite.as_str()) && run.failed());
    if any_failure {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
