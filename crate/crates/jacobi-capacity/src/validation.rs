//! One-shot validation suite: every cross-module consistency check
//! (orthogonality, density normalization, the normalization-constant index
//! erratum, the bound sandwich, Monte Carlo vs quadrature agreement, the
//! determinant decomposition, and determinism under parallel execution),
//! each reported with its measured value against a pinned tolerance.

use std::fmt::Write as _;
use std::time::Instant;

use crate::capacity::{
    capacity_monte_carlo, capacity_monte_carlo_multi, capacity_quadrature, default_quad_order,
    expected_logdet, high_snr_approx, lower_bound, low_snr_approx, mean_eigenvalue, sweep,
    upper_bound, SnrGrid,
};
use crate::cli::{sweep_to_csv_string, Units};
use crate::density::{
    joint_density, marginal_density, selberg_log_constant, selberg_log_constant_shifted_index,
};
use crate::linalg::{cholesky_logdet, hermitian_eigenvalues};
use crate::model::{canonicalize, jacobi_params, ChannelConfig, JacobiParams, Snr};
use crate::randmat::{sample_channel, sample_logdet_beta_product, RngStream};
use crate::specfun::{
    digamma_int, gauss_legendre, jacobi_norm_e, jacobi_poly, ln_f, ln_gamma,
};

/// 99.9% quantile of the chi-square distribution with 19 degrees of
/// freedom, for the 20-bin histogram test.
const CHI2_99_9_DF19: f64 = 43.8201959645175;

/// Test configurations exercised by the sandwich and tightness checks.
/// Covers square and rectangular cases, the scalar channel, a mode-excess
/// case, and a large-m case.
pub const TEST_CONFIGS: [(usize, usize, usize); 6] = [
    (6, 2, 2),
    (16, 4, 10),
    (2, 1, 1),
    (8, 3, 3),
    (4, 3, 3),
    (64, 40, 40),
];

/// Configurations used for the high-SNR bound-vs-approximation agreement
/// check (small-m setups where the 40 dB gap is below the pinned 1e-3).
const HIGH_SNR_CONFIGS: [(usize, usize, usize); 3] = [(4, 1, 2), (8, 2, 4), (16, 4, 8)];

/// Outcome of one validation check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

/// Full suite outcome.
#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {:<36} measured {:>12.5e}  tolerance {:>9.3e}  ({:.2} s){}{}",
                c.name,
                c.measured,
                c.tolerance,
                c.seconds,
                if c.detail.is_empty() { "" } else { "  " },
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "{} of {} checks passed in {:.1} s",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
            self.seconds
        );
        out
    }
}

fn timed<F: FnOnce() -> Check>(f: F) -> Check {
    let start = Instant::now();
    let mut check = f();
    check.seconds = start.elapsed().as_secs_f64();
    check
}

fn configs() -> Vec<ChannelConfig> {
    TEST_CONFIGS
        .iter()
        .map(|&(m, mt, mr)| ChannelConfig::new(m, mt, mr).unwrap())
        .collect()
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs the whole suite with the given base seed.
pub fn run_all(seed: u64) -> Report {
    let start = Instant::now();
    let checks = vec![
        timed(|| lngamma_functional_equation()),
        timed(|| digamma_harmonic_bridge()),
        timed(|| jacobi_orthogonality_offdiag()),
        timed(|| jacobi_orthogonality_diag()),
        timed(|| marginal_normalization()),
        timed(|| joint_normalization()),
        timed(|| selberg_index_erratum()),
        timed(|| mean_eigenvalue_quadrature()),
        timed(|| mean_eigenvalue_monte_carlo(seed)),
        timed(|| eigenvalue_histogram(seed)),
        timed(|| quadrature_order_doubling()),
        timed(|| closed_form_quadrature()),
        timed(|| closed_form_monte_carlo(seed)),
        timed(|| sandwich_bounds()),
        timed(|| monte_carlo_agreement(seed)),
        timed(|| mode_excess_recursion(seed)),
        timed(|| determinant_decomposition_mean(seed)),
        timed(|| determinant_decomposition_moments(seed)),
        timed(|| expected_logdet_consistency(seed)),
        timed(|| amgm_bound_ordering()),
        timed(|| low_snr_tightness()),
        timed(|| high_snr_tightness()),
        timed(|| bound_gap_monotonicity()),
        timed(|| determinism_parallel(seed)),
    ];
    Report {
        checks,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn lngamma_functional_equation() -> Check {
    let mut worst = 0.0f64;
    for &x in &[0.5, 1.0, 2.5, 10.0, 100.0] {
        let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap();
        let rel = ((lhs - x.ln()) / x.ln().abs().max(1.0)).abs();
        worst = worst.max(rel);
    }
    Check {
        name: "lngamma_functional_equation",
        passed: worst <= 1e-12,
        measured: worst,
        tolerance: 1e-12,
        detail: "ln G(x+1) - ln G(x) = ln x".into(),
        seconds: 0.0,
    }
}

fn digamma_harmonic_bridge() -> Check {
    let mut worst = 0.0f64;
    for cfg in configs() {
        let red = match canonicalize(&cfg).reduced {
            Some(r) => r,
            None => continue,
        };
        let mt = red.transmit();
        let sum: f64 = (0..mt)
            .map(|j| digamma_int(red.modes() - j).unwrap() - digamma_int(red.receive() - j).unwrap())
            .sum();
        worst = worst.max((sum / mt as f64 - ln_f(&red).unwrap() / mt as f64).abs());
    }
    Check {
        name: "digamma_harmonic_bridge",
        passed: worst <= 1e-12,
        measured: worst,
        tolerance: 1e-12,
        detail: "psi sums equal the harmonic double sum".into(),
        seconds: 0.0,
    }
}

const ORTHO_PAIRS: [(usize, usize); 4] = [(0, 0), (0, 2), (6, 2), (3, 1)];

fn jacobi_orthogonality_offdiag() -> Check {
    let rule = gauss_legendre(64).unwrap();
    let mut worst = 0.0f64;
    for &(a, b) in &ORTHO_PAIRS {
        for n in 0..=10usize {
            for k in 0..n {
                let val = rule.integrate(-1.0, 1.0, |x| {
                    (1.0 - x).powi(a as i32)
                        * (1.0 + x).powi(b as i32)
                        * jacobi_poly(n, a, b, x)
                        * jacobi_poly(k, a, b, x)
                });
                worst = worst.max(val.abs());
            }
        }
    }
    Check {
        name: "jacobi_orthogonality_offdiag",
        passed: worst < 1e-10,
        measured: worst,
        tolerance: 1e-10,
        detail: "weighted cross products vanish, n != k <= 10".into(),
        seconds: 0.0,
    }
}

fn jacobi_orthogonality_diag() -> Check {
    let rule = gauss_legendre(64).unwrap();
    let mut worst = 0.0f64;
    for &(a, b) in &ORTHO_PAIRS {
        for n in 0..=10usize {
            let val = rule.integrate(-1.0, 1.0, |x| {
                (1.0 - x).powi(a as i32)
                    * (1.0 + x).powi(b as i32)
                    * jacobi_poly(n, a, b, x).powi(2)
            });
            let expect = 2f64.powi((a + b + 1) as i32) * jacobi_norm_e(n, a, b);
            worst = worst.max(((val - expect) / expect).abs());
        }
    }
    Check {
        name: "jacobi_orthogonality_diag",
        passed: worst <= 1e-10,
        measured: worst,
        tolerance: 1e-10,
        detail: "squared norms equal 2^(a+b+1) e_{n,a,b}".into(),
        seconds: 0.0,
    }
}

fn marginal_normalization() -> Check {
    let mut worst = 0.0f64;
    for &(a, b) in &[(0usize, 0usize), (0, 2), (6, 2), (12, 12), (3, 1), (12, 0)] {
        for &n in &[1usize, 2, 4, 8] {
            let p = JacobiParams { a, b, n };
            let order = ((a + b + 2 * n) / 2 + 4).max(16);
            let rule = gauss_legendre(order).unwrap();
            let total = rule.integrate(0.0, 1.0, |l| marginal_density(l, &p));
            worst = worst.max((total - 1.0).abs());
        }
    }
    Check {
        name: "marginal_normalization",
        passed: worst <= 1e-10,
        measured: worst,
        tolerance: 1e-10,
        detail: "marginal integrates to 1 for a, b <= 12, n <= 8".into(),
        seconds: 0.0,
    }
}

fn joint_normalization() -> Check {
    let rule = gauss_legendre(48).unwrap();
    let mut worst = 0.0f64;
    // n = 1: plain beta normalization.
    for &(a, b) in &[(0usize, 0usize), (1, 0), (6, 2)] {
        let p = JacobiParams { a, b, n: 1 };
        let total = rule.integrate(0.0, 1.0, |l| joint_density(&[l], &p).unwrap());
        worst = worst.max((total - 1.0).abs());
    }
    // n = 2: 2-D quadrature over the ordered simplex l1 >= l2.
    for &(a, b) in &[(0usize, 0usize), (0, 2), (3, 1)] {
        let p = JacobiParams { a, b, n: 2 };
        let total = rule.integrate(0.0, 1.0, |l1| {
            rule.integrate(0.0, l1, |l2| joint_density(&[l1, l2], &p).unwrap())
        });
        worst = worst.max((total - 1.0).abs());
    }
    Check {
        name: "joint_normalization",
        passed: worst <= 1e-6,
        measured: worst,
        tolerance: 1e-6,
        detail: "joint density integrates to 1 on the ordered simplex".into(),
        seconds: 0.0,
    }
}

fn selberg_index_erratum() -> Check {
    // The one-based index variant of the normalization product fails the
    // analytically forced n=1, a=1, b=0 beta case; the zero-based form
    // (with the ordering factor) is the one every density here uses.
    let p = JacobiParams { a: 1, b: 0, n: 1 };
    let correct = selberg_log_constant(&p).exp();
    let shifted = selberg_log_constant_shifted_index(&p).exp();
    let factor = shifted / correct;
    Check {
        name: "selberg_index_erratum",
        passed: (factor - 1.0).abs() > 0.01 && (correct - 0.5).abs() < 1e-13,
        measured: factor,
        tolerance: 1.0,
        detail: format!(
            "one-based-index constant misnormalizes the n=1,a=1,b=0 density by x{factor:.6} (must differ from 1); zero-based form gives the exact 1/2"
        ),
        seconds: 0.0,
    }
}

const MEAN_EIG_CONFIGS: [(usize, usize, usize); 3] = [(6, 2, 2), (16, 4, 10), (8, 3, 3)];

fn mean_eigenvalue_quadrature() -> Check {
    let rule = gauss_legendre(64).unwrap();
    let mut worst = 0.0f64;
    for &(m, mt, mr) in &MEAN_EIG_CONFIGS {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let p = jacobi_params(&cfg).unwrap();
        let mean = rule.integrate(0.0, 1.0, |l| l * marginal_density(l, &p));
        worst = worst.max((mean - mean_eigenvalue(&cfg).unwrap()).abs());
    }
    Check {
        name: "mean_eigenvalue_quadrature",
        passed: worst <= 1e-10,
        measured: worst,
        tolerance: 1e-10,
        detail: "integral of l * marginal equals m_r / m".into(),
        seconds: 0.0,
    }
}

fn mean_eigenvalue_monte_carlo(seed: u64) -> Check {
    let trials = 10_000u64;
    let mut worst_z = 0.0f64;
    let mut detail = String::new();
    for &(m, mt, mr) in &MEAN_EIG_CONFIGS {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let xs: Vec<f64> = (0..trials)
            .map(|t| {
                let h = sample_channel(&cfg, RngStream::new(seed ^ 0x6d65, t)).unwrap();
                // Mean eigenvalue of the Gram matrix is its trace over m_t,
                // and the trace is the squared Frobenius norm of H.
                let mut tr = 0.0;
                for i in 0..h.rows() {
                    for j in 0..h.cols() {
                        tr += h[(i, j)].norm_sqr();
                    }
                }
                tr / mt as f64
            })
            .collect();
        let (mean, se) = mean_and_se(&xs);
        let z = (mean - mr as f64 / m as f64).abs() / se;
        worst_z = worst_z.max(z);
        let _ = write!(detail, "({m},{mt},{mr}): z = {z:.2}; ");
    }
    Check {
        name: "mean_eigenvalue_monte_carlo",
        passed: worst_z <= 3.0,
        measured: worst_z,
        tolerance: 3.0,
        detail,
        seconds: 0.0,
    }
}

fn eigenvalue_histogram(seed: u64) -> Check {
    // Empirical eigenvalues of 1e4 sampled Gram matrices for (6,2,2),
    // binned into 20 equal bins, against probabilities from the marginal.
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let p = jacobi_params(&cfg).unwrap();
    let bins = 20usize;
    let mut counts = vec![0usize; bins];
    let trials = 10_000u64;
    for t in 0..trials {
        let h = sample_channel(&cfg, RngStream::new(seed ^ 0x68697374, t)).unwrap();
        for v in hermitian_eigenvalues(&h.gram()).unwrap() {
            let idx = ((v.clamp(0.0, 1.0)) * bins as f64).floor().min(bins as f64 - 1.0) as usize;
            counts[idx] += 1;
        }
    }
    let rule = gauss_legendre(16).unwrap();
    let total = (trials * 2) as f64;
    let mut chi2 = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let lo = i as f64 / bins as f64;
        let hi = (i + 1) as f64 / bins as f64;
        let prob = rule.integrate(lo, hi, |l| marginal_density(l, &p));
        let expect = total * prob;
        chi2 += (c as f64 - expect).powi(2) / expect;
    }
    Check {
        name: "eigenvalue_histogram",
        passed: chi2 < CHI2_99_9_DF19,
        measured: chi2,
        tolerance: CHI2_99_9_DF19,
        detail: "chi-square of 20-bin histogram vs marginal, (6,2,2)".into(),
        seconds: 0.0,
    }
}

fn quadrature_order_doubling() -> Check {
    let mut worst = 0.0f64;
    for cfg in configs() {
        let order = default_quad_order(&cfg);
        for &db in &[-10.0, 10.0, 30.0, 40.0] {
            let snr = Snr::from_db(db).unwrap();
            let v1 = capacity_quadrature(&cfg, snr, order).unwrap();
            let v2 = capacity_quadrature(&cfg, snr, 2 * order).unwrap();
            worst = worst.max((v1 - v2).abs());
        }
    }
    Check {
        name: "quadrature_order_doubling",
        passed: worst <= 1e-9,
        measured: worst,
        tolerance: 1e-9,
        detail: "capacity stable under doubling the panel order".into(),
        seconds: 0.0,
    }
}

fn closed_form_quadrature() -> Check {
    let cfg = ChannelConfig::new(2, 1, 1).unwrap();
    let exact = 2.0 * 2f64.ln() - 1.0;
    let val = capacity_quadrature(&cfg, Snr::from_linear(1.0).unwrap(), 64).unwrap();
    let dev = (val - exact).abs();
    Check {
        name: "closed_form_quadrature",
        passed: dev <= 1e-9,
        measured: dev,
        tolerance: 1e-9,
        detail: format!("(2,1,1) at rho=1: {val:.10} vs 2 ln 2 - 1 = {exact:.10}"),
        seconds: 0.0,
    }
}

fn closed_form_monte_carlo(seed: u64) -> Check {
    let cfg = ChannelConfig::new(2, 1, 1).unwrap();
    let exact = 2.0 * 2f64.ln() - 1.0;
    let est = capacity_monte_carlo(&cfg, Snr::from_linear(1.0).unwrap(), 10_000, seed).unwrap();
    let z = (est.mean - exact).abs() / est.std_error;
    Check {
        name: "closed_form_monte_carlo",
        passed: z <= 3.0,
        measured: z,
        tolerance: 3.0,
        detail: format!("MC {:.6} +- {:.6} vs {exact:.6}", est.mean, est.std_error),
        seconds: 0.0,
    }
}

fn grid_snrs() -> Vec<Snr> {
    SnrGrid::new(-10.0, 30.0, 5.0)
        .unwrap()
        .points_db()
        .iter()
        .map(|&db| Snr::from_db(db).unwrap())
        .collect()
}

fn sandwich_bounds() -> Check {
    let mut worst_margin = f64::INFINITY;
    for cfg in configs() {
        let order = default_quad_order(&cfg);
        for snr in grid_snrs() {
            let lo = lower_bound(&cfg, snr);
            let hi = upper_bound(&cfg, snr);
            let exact = capacity_quadrature(&cfg, snr, order).unwrap();
            worst_margin = worst_margin.min(exact - lo).min(hi - exact);
        }
    }
    Check {
        name: "sandwich_bounds",
        passed: worst_margin > 0.0,
        measured: worst_margin,
        tolerance: 0.0,
        detail: "lower < quadrature < upper strictly on the -10..30 dB grid".into(),
        seconds: 0.0,
    }
}

fn monte_carlo_agreement(seed: u64) -> Check {
    let snrs = grid_snrs();
    let mut worst_z = 0.0f64;
    let mut detail = String::new();
    for cfg in configs() {
        let order = default_quad_order(&cfg);
        let ests = capacity_monte_carlo_multi(&cfg, &snrs, 10_000, seed).unwrap();
        let mut cfg_worst = 0.0f64;
        for (snr, est) in snrs.iter().zip(&ests) {
            let exact = capacity_quadrature(&cfg, *snr, order).unwrap();
            let z = (est.mean - exact).abs() / est.std_error;
            cfg_worst = cfg_worst.max(z);
        }
        worst_z = worst_z.max(cfg_worst);
        let _ = write!(detail, "{}: max z = {cfg_worst:.2}; ", cfg.label());
    }
    Check {
        name: "monte_carlo_agreement",
        passed: worst_z <= 3.0,
        measured: worst_z,
        tolerance: 3.0,
        detail,
        seconds: 0.0,
    }
}

fn mode_excess_recursion(seed: u64) -> Check {
    // Monte Carlo of (4,3,3), which genuinely samples the 3x3 block, must
    // match 2 ln(1+rho) plus the quadrature capacity of the reduced (4,1,1).
    let full = ChannelConfig::new(4, 3, 3).unwrap();
    let reduced = ChannelConfig::new(4, 1, 1).unwrap();
    let mut worst_z = 0.0f64;
    let mut detail = String::new();
    for &rho in &[1.0, 10.0] {
        let snr = Snr::from_linear(rho).unwrap();
        let est = capacity_monte_carlo(&full, snr, 10_000, seed ^ 0x7265).unwrap();
        let expect = 2.0 * (1.0 + rho).ln() + capacity_quadrature(&reduced, snr, 64).unwrap();
        let z = (est.mean - expect).abs() / est.std_error;
        worst_z = worst_z.max(z);
        let _ = write!(detail, "rho={rho}: z = {z:.2}; ");
    }
    Check {
        name: "mode_excess_recursion",
        passed: worst_z <= 3.0,
        measured: worst_z,
        tolerance: 3.0,
        detail,
        seconds: 0.0,
    }
}

fn determinant_decomposition_mean(seed: u64) -> Check {
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let expect = expected_logdet(&cfg).unwrap();
    let xs: Vec<f64> = (0..10_000u64)
        .map(|t| {
            let h = sample_channel(&cfg, RngStream::new(seed ^ 0x6c64, t)).unwrap();
            cholesky_logdet(&h.gram()).unwrap()
        })
        .collect();
    let (mean, se) = mean_and_se(&xs);
    let z = (mean - expect).abs() / se;
    Check {
        name: "determinant_decomposition_mean",
        passed: z <= 3.0,
        measured: z,
        tolerance: 3.0,
        detail: format!("(6,2,2): E ln det = {mean:.4} +- {se:.4} vs {expect:.4}"),
        seconds: 0.0,
    }
}

fn determinant_decomposition_moments(seed: u64) -> Check {
    let mut worst_z = 0.0f64;
    let mut detail = String::new();
    for (i, &(m, mt, mr)) in [(6usize, 2usize, 2usize), (8, 3, 3)].iter().enumerate() {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let n = 10_000u64;
        let haar: Vec<f64> = (0..n)
            .map(|t| {
                let h = sample_channel(&cfg, RngStream::new(seed ^ (0xa0 + i as u64), t)).unwrap();
                cholesky_logdet(&h.gram()).unwrap()
            })
            .collect();
        let beta: Vec<f64> = (0..n)
            .map(|t| sample_logdet_beta_product(&cfg, RngStream::new(seed ^ (0xb0 + i as u64), t)).unwrap())
            .collect();
        for moment in 1..=2 {
            let pow = |xs: &[f64]| -> Vec<f64> {
                xs.iter().map(|x| x.powi(moment)).collect()
            };
            let (m1, se1) = mean_and_se(&pow(&haar));
            let (m2, se2) = mean_and_se(&pow(&beta));
            let z = (m1 - m2).abs() / (se1 * se1 + se2 * se2).sqrt();
            worst_z = worst_z.max(z);
            let _ = write!(detail, "({m},{mt},{mr}) m{moment}: z = {z:.2}; ");
        }
    }
    Check {
        name: "determinant_decomposition_moments",
        passed: worst_z <= 4.0,
        measured: worst_z,
        tolerance: 4.0,
        detail,
        seconds: 0.0,
    }
}

fn expected_logdet_consistency(seed: u64) -> Check {
    let mut worst_z = 0.0f64;
    let mut detail = String::new();
    for (i, &(m, mt, mr)) in [(6usize, 2usize, 2usize), (8, 3, 3)].iter().enumerate() {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let expect = expected_logdet(&cfg).unwrap();
        let xs: Vec<f64> = (0..10_000u64)
            .map(|t| {
                let h = sample_channel(&cfg, RngStream::new(seed ^ (0xc0 + i as u64), t)).unwrap();
                cholesky_logdet(&h.gram()).unwrap()
            })
            .collect();
        let (mean, se) = mean_and_se(&xs);
        let z = (mean - expect).abs() / se;
        worst_z = worst_z.max(z);
        let _ = write!(detail, "({m},{mt},{mr}): z = {z:.2}; ");
    }
    Check {
        name: "expected_logdet_consistency",
        passed: worst_z <= 3.0,
        measured: worst_z,
        tolerance: 3.0,
        detail,
        seconds: 0.0,
    }
}

fn amgm_bound_ordering() -> Check {
    // exp(-ln F / m_t) <= m_r / m: geometric mean below arithmetic mean.
    let mut worst = f64::NEG_INFINITY;
    for cfg in configs() {
        let red = match canonicalize(&cfg).reduced {
            Some(r) => r,
            None => continue,
        };
        let geo = (-ln_f(&red).unwrap() / red.transmit() as f64).exp();
        let diff = geo - red.receive() as f64 / red.modes() as f64;
        worst = worst.max(diff);
    }
    Check {
        name: "amgm_bound_ordering",
        passed: worst <= 1e-15,
        measured: worst,
        tolerance: 0.0,
        detail: "exp(-ln F / m_t) never exceeds m_r / m".into(),
        seconds: 0.0,
    }
}

fn low_snr_tightness() -> Check {
    let snr = Snr::from_db(-20.0).unwrap();
    let mut worst = 0.0f64;
    for cfg in configs() {
        let order = default_quad_order(&cfg);
        let exact = capacity_quadrature(&cfg, snr, order).unwrap();
        let approx = low_snr_approx(&cfg, snr);
        worst = worst.max(((exact - approx) / exact).abs());
    }
    Check {
        name: "low_snr_tightness",
        passed: worst <= 0.02,
        measured: worst,
        tolerance: 0.02,
        detail: "relative error of the low-SNR approximation at -20 dB".into(),
        seconds: 0.0,
    }
}

fn high_snr_tightness() -> Check {
    let snr = Snr::from_db(40.0).unwrap();
    let mut worst = 0.0f64;
    for &(m, mt, mr) in &HIGH_SNR_CONFIGS {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let gap = lower_bound(&cfg, snr) - high_snr_approx(&cfg, snr).unwrap();
        worst = worst.max(gap.abs());
    }
    // The sandwich configs converge more slowly (the gap is
    // m_t ln(1 + exp(ln F / m_t) / rho), which exceeds 1e-3 at 40 dB once
    // m_t exp(ln F / m_t) > ~10); report them without asserting.
    let mut detail = String::from("asserted on (4,1,2) (8,2,4) (16,4,8); sandwich configs: ");
    for cfg in configs() {
        let gap = lower_bound(&cfg, snr) - high_snr_approx(&cfg, snr).unwrap();
        let _ = write!(detail, "{} {:.2e}; ", cfg.label(), gap);
    }
    Check {
        name: "high_snr_tightness",
        passed: worst <= 1e-3,
        measured: worst,
        tolerance: 1e-3,
        detail,
        seconds: 0.0,
    }
}

fn bound_gap_monotonicity() -> Check {
    // The quadrature-minus-lower-bound gap rises from zero to a peak near
    // 5-10 dB and then decays toward zero; assert the decay on the 10..30
    // dB portion of the grid.
    let mut worst_increase = f64::NEG_INFINITY;
    let mut detail = String::new();
    for cfg in configs() {
        let order = default_quad_order(&cfg);
        let gaps: Vec<f64> = (2..=6)
            .map(|i| {
                let snr = Snr::from_db(i as f64 * 5.0).unwrap();
                capacity_quadrature(&cfg, snr, order).unwrap() - lower_bound(&cfg, snr)
            })
            .collect();
        let mut cfg_worst = f64::NEG_INFINITY;
        for pair in gaps.windows(2) {
            cfg_worst = cfg_worst.max(pair[1] - pair[0]);
        }
        worst_increase = worst_increase.max(cfg_worst);
        let _ = write!(detail, "{}: {:+.2e}; ", cfg.label(), cfg_worst);
    }
    Check {
        name: "bound_gap_monotonicity",
        passed: worst_increase <= 0.0,
        measured: worst_increase,
        tolerance: 0.0,
        detail: format!("max gap increase on 10..30 dB (negative = decaying): {detail}"),
        seconds: 0.0,
    }
}

fn determinism_parallel(seed: u64) -> Check {
    // Identical seed must give byte-identical sweep CSV under different
    // rayon worker counts and across repeated runs.
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let grid = SnrGrid::new(-10.0, 30.0, 5.0).unwrap();
    let run = |threads: usize| -> String {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let rows = sweep(&cfg, &grid, 1_000, seed, None).unwrap();
            sweep_to_csv_string(&rows, Units::Nats)
        })
    };
    let one = run(1);
    let two = run(2);
    let again = run(2);
    let identical = one == two && two == again;
    Check {
        name: "determinism_parallel",
        passed: identical,
        measured: if identical { 0.0 } else { 1.0 },
        tolerance: 0.0,
        detail: "sweep CSV byte-identical across 1 and 2 worker threads".into(),
        seconds: 0.0,
    }
}
