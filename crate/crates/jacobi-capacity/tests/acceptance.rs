//! Acceptance suite: runs every release criterion at its pinned tolerance
//! and prints one pass/fail line per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use jacobi_capacity::cli::{run_figure, FigureId, RunOptions};
use jacobi_capacity::validation::{run_all, Check, Report};

const SEED: u64 = 42;

struct Criterion {
    id: &'static str,
    description: &'static str,
    checks: &'static [&'static str],
    /// Wall-clock budget in seconds for the mapped checks, if any.
    budget: Option<f64>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "1",
        description: "mean-eigenvalue law: quadrature exact to 1e-10, Monte Carlo within 3 SE",
        checks: &["mean_eigenvalue_quadrature", "mean_eigenvalue_monte_carlo"],
        budget: Some(10.0),
    },
    Criterion {
        id: "2",
        description: "sandwich: lower <= quadrature <= upper on the dB grid, MC within 3 SE",
        checks: &["sandwich_bounds", "monte_carlo_agreement"],
        budget: Some(60.0),
    },
    Criterion {
        id: "3",
        description: "closed-form oracle (2,1,1) rho=1: quadrature = 2 ln 2 - 1 to 1e-9, MC within 3 SE",
        checks: &["closed_form_quadrature", "closed_form_monte_carlo"],
        budget: None,
    },
    Criterion {
        id: "4",
        description: "mode-excess recursion: MC of (4,3,3) = 2 ln(1+rho) + quadrature of (4,1,1)",
        checks: &["mode_excess_recursion"],
        budget: None,
    },
    Criterion {
        id: "5",
        description: "determinant decomposition: digamma mean within 3 SE, beta-product moments within 4 SE",
        checks: &[
            "determinant_decomposition_mean",
            "determinant_decomposition_moments",
        ],
        budget: None,
    },
    Criterion {
        id: "6",
        description: "Jacobi orthogonality: off-diagonal < 1e-10, diagonal norms to 1e-10 relative",
        checks: &["jacobi_orthogonality_offdiag", "jacobi_orthogonality_diag"],
        budget: None,
    },
    Criterion {
        id: "7",
        description: "density normalization and normalization-constant index erratum",
        checks: &[
            "marginal_normalization",
            "joint_normalization",
            "selberg_index_erratum",
        ],
        budget: None,
    },
    Criterion {
        id: "8",
        description: "corollary tightness: low-SNR <= 2% at -20 dB, high-SNR gap <= 1e-3 at 40 dB, gap decays",
        checks: &[
            "low_snr_tightness",
            "high_snr_tightness",
            "bound_gap_monotonicity",
        ],
        budget: None,
    },
    Criterion {
        id: "9",
        description: "determinism: byte-identical sweeps for a fixed seed across worker counts",
        checks: &["determinism_parallel"],
        budget: None,
    },
];

fn find<'r>(report: &'r Report, name: &str) -> &'r Check {
    report
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("validation suite lost the check '{name}'"))
}

#[test]
fn acceptance_criteria() {
    let report = run_all(SEED);
    let mut failures = Vec::new();
    for criterion in CRITERIA {
        let checks: Vec<&Check> = criterion.checks.iter().map(|n| find(&report, n)).collect();
        let mut ok = checks.iter().all(|c| c.passed);
        let elapsed: f64 = checks.iter().map(|c| c.seconds).sum();
        let mut note = String::new();
        if let Some(budget) = criterion.budget {
            if elapsed > budget {
                ok = false;
                note = format!(" [over budget: {elapsed:.1} s > {budget:.0} s]");
            }
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} ({elapsed:.2} s){note}  {}",
            criterion.id, criterion.description
        );
        for c in checks {
            println!(
                "              {} {} = {:.5e} (tolerance {:.3e})",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance
            );
            if !c.passed || !note.is_empty() {
                println!("              {}", c.detail);
            }
        }
        if !ok {
            failures.push(criterion.id);
        }
    }
    println!(
        "validation suite: {} checks in {:.1} s (budget 120 s)",
        report.checks.len(),
        report.seconds
    );
    assert!(
        report.seconds <= 120.0,
        "validation suite exceeded its 120 s budget: {:.1} s",
        report.seconds
    );
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn figure_scale_criterion() {
    // The large-m figure data (m = 128, three configurations, 9 grid
    // points) must complete in under 10 minutes at 1e3 trials per point.
    let start = Instant::now();
    let opts = RunOptions {
        trials: 1_000,
        seed: SEED,
        ..Default::default()
    };
    let mut sink = Vec::new();
    run_figure(FigureId::F2b, &opts, &mut sink).expect("figure 2b data generation");
    let elapsed = start.elapsed().as_secs_f64();
    let rows = String::from_utf8(sink).unwrap().lines().count();
    println!("figure-scale PASS: m=128 figure data ({rows} rows) in {elapsed:.1} s (budget 600 s)");
    assert_eq!(rows, 1 + 3 * 9, "three configs on a 9-point grid plus header");
    assert!(
        elapsed < 600.0,
        "m=128 figure generation took {elapsed:.1} s, budget is 600 s"
    );
}
