//! Acceptance suite: one test per criterion, each running the relevant
//! verification suite(s) at the pinned tolerance and instance shape and
//! printing a single pass/fail line.
//!
//! Run with `cargo test -p cartan-verify --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use cartan_verify::config::{InstanceConfig, WeightMode};
use cartan_verify::suites::run_suite;
use cartan_verify::SuiteRun;

fn base(seed: u64) -> InstanceConfig {
    InstanceConfig {
        seed,
        ..InstanceConfig::default()
    }
}

fn run(name: &str, cfg: &InstanceConfig) -> SuiteRun {
    run_suite(name, cfg).unwrap_or_else(|e| panic!("suite {name} failed to start: {e}"))
}

fn report_line(criterion: &str, description: &str, pass: bool, detail: &str) {
    println!(
        "[{criterion}] {}: {description} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn assert_clean(criterion: &str, description: &str, runs: &[SuiteRun]) {
    let pass = runs.iter().all(|r| r.report.failures.is_empty());
    let detail = runs
        .iter()
        .map(|r| {
            format!(
                "{}: {}/{} worst_margin={:.3e}",
                r.report.suite, r.report.passes, r.report.trials, r.report.worst_margin
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    report_line(criterion, description, pass, &detail);
    assert!(pass, "{criterion} failed: {detail}");
}

#[test]
fn criterion_01_closed_form_barycenters() {
    // Two-atom Karcher means land on the geodesic within 1e-9 for 500
    // random pairs up to 6x6 with weights (1-t, t), t in {1/4, 1/2, 3/4};
    // commuting families give entrywise geometric means within 1e-10.
    let cfg = InstanceConfig {
        trials: 500,
        max_dim: 6,
        max_atoms: 3,
        ..base(0xACC0_0001)
    };
    let runs = [run("karcher-props", &cfg)];
    assert_clean(
        "criterion 01",
        "two-atom means on geodesics; commuting families entrywise",
        &runs,
    );
}

#[test]
fn criterion_02_karcher_residual_and_determinant() {
    // Every solved instance (n <= 6, m <= 8, 300 instances) has residual
    // <= 1e-11 and satisfies the determinant identity within 1e-9.
    let cfg = InstanceConfig {
        trials: 300,
        max_dim: 6,
        max_atoms: 8,
        ..base(0xACC0_0002)
    };
    let runs = [run("karcher-props", &cfg)];
    assert_clean(
        "criterion 02",
        "Karcher residual <= 1e-11 and log-det identity within 1e-9",
        &runs,
    );
}

#[test]
fn criterion_03_metric_comparison() {
    // d_T <= delta <= sqrt(n) d_T with slack >= -1e-10 on 500 pairs, n <= 8.
    let cfg = InstanceConfig {
        trials: 500,
        max_dim: 8,
        ..base(0xACC0_0003)
    };
    let runs = [run("metric-comp", &cfg)];
    assert_clean(
        "criterion 03",
        "metric comparison with slack >= -1e-10 on 500 pairs",
        &runs,
    );
}

#[test]
fn criterion_04_eigenvalue_map_contraction_and_emi() {
    // delta(lambda(A), lambda(B)) <= delta(A,B), the EMI bound, and
    // Lidskii-Wielandt, 500 pairs each, slack >= -1e-10.
    let cfg = InstanceConfig {
        trials: 500,
        max_dim: 8,
        ..base(0xACC0_0004)
    };
    let runs = [run("eig-contract", &cfg), run("emi-lidskii", &cfg)];
    assert_clean(
        "criterion 04",
        "eigenvalue-map contraction, EMI, Lidskii-Wielandt at slack -1e-10",
        &runs,
    );
}

#[test]
fn criterion_05_eigenvalue_chain() {
    // The full eigenvalue log-majorization chain on 300 random measures,
    // n <= 5, m <= 6, r in {1/4, 1/2, 3/4}; prefix slack >= -1e-8 and
    // total products within 1e-8.
    let cfg = InstanceConfig {
        trials: 300,
        max_dim: 5,
        max_atoms: 6,
        r_grid: vec![0.25, 0.5, 0.75],
        ..base(0xACC0_0005)
    };
    let runs = [run("thm-main-eig", &cfg)];
    assert_clean(
        "criterion 05",
        "eigenvalue chain G(mu) -> G(mu^r)^{1/r} -> log-Euclidean -> G(lambda_* mu)",
        &runs,
    );
}

#[test]
fn criterion_06_lie_trotter_convergence() {
    // delta(G(mu^s)^{1/s}, exp E[log A]) decreases along s = 2^-2, 2^-4,
    // 2^-6 and drops below 1e-3 at 2^-6 for diameter <= 1 (100 instances).
    let cfg = InstanceConfig {
        trials: 100,
        ..base(0xACC0_0006)
    };
    let runs = [run("lie-trotter", &cfg)];
    assert_clean(
        "criterion 06",
        "Lie-Trotter gap decreasing and below 1e-3 at s = 2^-6",
        &runs,
    );
}

#[test]
fn criterion_07_symplectic_formula_consistency() {
    // Extended spectrum matches the Williamson D (doubled, reversed)
    // within 1e-8; M^T J M = J and M^T diag(D,D) M = A within 1e-8 on
    // 300 instances up to 6x6.
    let cfg = InstanceConfig {
        trials: 300,
        max_dim: 3,
        ..base(0xACC0_0007)
    };
    let runs = [run("williamson", &cfg)];
    assert_clean(
        "criterion 07",
        "Williamson invariants and spectrum consistency within 1e-8",
        &runs,
    );
}

#[test]
fn criterion_08_extended_map_monotone_and_lipschitz() {
    // dd monotone under PSD perturbations (slack >= -1e-9, 300 >= 200
    // trials); d_T(dd(A), dd(B)) <= d_T(A,B) and delta(dd(A), dd(B)) <=
    // sqrt(2n) delta(A,B) on 300 pairs.
    let cfg = InstanceConfig {
        trials: 300,
        max_dim: 3,
        ..base(0xACC0_0008)
    };
    let runs = [run("thm-main-symp", &cfg)];
    assert_clean(
        "criterion 08",
        "extended map monotone and Lipschitz in both metrics",
        &runs,
    );
}

#[test]
fn criterion_09_top_bound_criterion() {
    // Boolean agreement between the semidefinite criterion and dd_1 <=
    // alpha across alpha sweeps straddling dd_1, 200 instances, no
    // disagreement outside the 1e-7 relative band.
    let cfg = InstanceConfig {
        trials: 200,
        max_dim: 3,
        ..base(0xACC0_0009)
    };
    let runs = [run("criterion-f43", &cfg)];
    assert_clean(
        "criterion 09",
        "order criterion agrees with dd_1 outside the 1e-7 band",
        &runs,
    );
}

#[test]
fn criterion_10_compound_prefix_identity() {
    // prod_{i<=k} dd_i equals the compound-lifted top eigenvalue root
    // within 1e-7 relative, all k, half-dim <= 3, 100 instances.
    let cfg = InstanceConfig {
        trials: 100,
        max_dim: 3,
        ..base(0xACC0_000A)
    };
    let runs = [run("compound-prefix", &cfg)];
    assert_clean(
        "criterion 10",
        "compound-matrix prefix products within 1e-7 relative",
        &runs,
    );
}

#[test]
fn criterion_11_weighted_symplectic_chain() {
    // dd^{1/r}(G_w(mu^r)) <_log G_w(dd_* mu) with prefix slack >= -1e-8 on
    // 300 weighted instances, r in {1/4, 1/2, 1}.
    let cfg = InstanceConfig {
        trials: 300,
        max_dim: 3,
        max_atoms: 4,
        r_grid: vec![0.25, 0.5, 1.0],
        ..base(0xACC0_000B)
    };
    let runs = [run("lemma-4-4", &cfg), run("thm-main-symp", &cfg)];
    assert_clean(
        "criterion 11",
        "weighted symplectic log-majorization chain at r in {1/4, 1/2, 1}",
        &runs,
    );
}

#[test]
fn criterion_12_fundamental_contraction() {
    // delta(G(mu), G(nu)) <= delta^W(mu, nu) + 1e-8 on 200 pairs of
    // 3-atom measures; same for the Thompson pair.
    let cfg = InstanceConfig {
        trials: 200,
        max_atoms: 3,
        ..base(0xACC0_000C)
    };
    let runs = [run("contraction", &cfg)];
    assert_clean(
        "criterion 12",
        "barycenter 1-Lipschitz against both Wasserstein distances",
        &runs,
    );
}

#[test]
fn criterion_13_multi_measure_chains() {
    // Full chains on exhaustively enumerated product-support instances:
    // supports <= 3, up to 3 measures, n <= 2 (half-dim <= 2 symplectic).
    let cfg = InstanceConfig {
        trials: 50,
        max_dim: 2,
        measures: 3,
        max_support: 3,
        ..base(0xACC0_000D)
    };
    let runs = [run("thm-5-1", &cfg), run("thm-5-2", &cfg)];
    assert_clean(
        "criterion 13",
        "multi-measure chains on enumerated product supports",
        &runs,
    );
}

#[test]
fn criterion_14_orthant_closed_form() {
    // G(lambda_* mu) equals the componentwise (prod lambda_i)^{1/m}
    // within 1e-10 for uniform mu, 100 instances.
    let cfg = InstanceConfig {
        trials: 100,
        ..base(0xACC0_000E)
    };
    let runs = [run("prop-3-2", &cfg)];
    assert_clean(
        "criterion 14",
        "orthant barycenter closed form within 1e-10",
        &runs,
    );
}

#[test]
fn criterion_15_transport_correctness() {
    // The transportation simplex matches a brute-force optimum on all
    // k1*k2 <= 36 shapes within 1e-8, and the assignment short-circuit
    // agrees with the general path within 1e-10.
    use cartan_core::measure::DiscreteMeasure;
    use cartan_core::random::random_spd;
    use cartan_core::spd::SpdMatrix;
    use cartan_core::transport::{wasserstein1_simplex, wasserstein1_spd, MatrixGround};
    use cartan_verify::rng::replay_rng;
    use itertools::Itertools;
    use rand::Rng;

    // Rational weights with denominator 6 so the refinement to a uniform
    // 6-point assignment problem is exact; the brute force enumerates all
    // 6! couplings of the refined problem.
    fn rational_weights(parts: usize, rng: &mut impl Rng) -> (Vec<f64>, Vec<usize>) {
        let mut cuts: Vec<usize> = Vec::new();
        while cuts.len() < parts - 1 {
            let c = rng.gen_range(1..6usize);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.push(6);
        let mut counts = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts {
            counts.push(c - prev);
            prev = c;
        }
        let weights: Vec<f64> = counts.iter().map(|&c| c as f64 / 6.0).collect();
        (weights, counts)
    }

    let mut worst_bf = 0.0_f64;
    let mut worst_short = 0.0_f64;
    let mut cases = 0;
    for k1 in 1..=6usize {
        for k2 in 1..=6usize {
            if k1 * k2 > 36 {
                continue;
            }
            let mut rng = replay_rng(0xACC0_000F ^ ((k1 * 16 + k2) as u64));
            let (w1, c1) = rational_weights(k1, &mut rng);
            let (w2, c2) = rational_weights(k2, &mut rng);
            let n = rng.gen_range(1..=3usize);
            let atoms1: Vec<SpdMatrix> = (0..k1).map(|_| random_spd(n, 1e3, &mut rng)).collect();
            let atoms2: Vec<SpdMatrix> = (0..k2).map(|_| random_spd(n, 1e3, &mut rng)).collect();
            let mu = DiscreteMeasure::new(atoms1.clone(), w1).unwrap();
            let nu = DiscreteMeasure::new(atoms2.clone(), w2).unwrap();

            let solved = wasserstein1_spd(&mu, &nu, MatrixGround::Riemannian).unwrap();

            // Brute force over the refined uniform problem.
            let mut exp1 = Vec::new();
            for (i, &c) in c1.iter().enumerate() {
                exp1.extend(std::iter::repeat_n(i, c));
            }
            let mut exp2 = Vec::new();
            for (j, &c) in c2.iter().enumerate() {
                exp2.extend(std::iter::repeat_n(j, c));
            }
            let cost: Vec<Vec<f64>> = (0..k1)
                .map(|i| {
                    (0..k2)
                        .map(|j| atoms1[i].riemannian_distance(&atoms2[j]).unwrap())
                        .collect()
                })
                .collect();
            let brute = (0..6usize)
                .permutations(6)
                .map(|perm| {
                    perm.iter()
                        .enumerate()
                        .map(|(slot, &target)| cost[exp1[slot]][exp2[target]])
                        .sum::<f64>()
                        / 6.0
                })
                .fold(f64::INFINITY, f64::min);
            worst_bf = worst_bf.max((solved.value - brute).abs());

            // Cross-check the assignment short-circuit against the
            // general simplex on an equal-size uniform instance.
            if k1 == k2 {
                let mu_u = DiscreteMeasure::uniform(atoms1.clone()).unwrap();
                let nu_u = DiscreteMeasure::uniform(atoms2.clone()).unwrap();
                let fast = wasserstein1_spd(&mu_u, &nu_u, MatrixGround::Riemannian).unwrap();
                let slow =
                    wasserstein1_simplex(&mu_u, &nu_u, |a, b| a.riemannian_distance(b)).unwrap();
                worst_short = worst_short.max((fast.value - slow.value).abs());
            }
            cases += 1;
        }
    }
    let pass = worst_bf <= 1e-8 && worst_short <= 1e-10;
    report_line(
        "criterion 15",
        "transport optimum matches brute force; assignment path agrees",
        pass,
        &format!("{cases} shapes, |simplex - brute| <= {worst_bf:.3e}, |fast - slow| <= {worst_short:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_16_conjecture_suite_reports_only() {
    // The exploratory suite runs, records margins (negative ones are
    // research notes), and never fails.
    let cfg = InstanceConfig {
        trials: 60,
        max_dim: 3,
        weight_mode: WeightMode::Random,
        ..base(0xACC0_0010)
    };
    let run = run("conjectures-abc", &cfg);
    let pass = run.report.failures.is_empty() && run.report.passes == run.report.trials;
    report_line(
        "criterion 16",
        "conjecture margins reported without asserting",
        pass,
        &format!(
            "worst margin {:.3e} (negative = counterexample candidate, logged only)",
            run.report.worst_margin
        ),
    );
    assert!(pass);
}
