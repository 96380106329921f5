//! Special functions behind the closed forms: log-gamma, integer digamma,
//! Jacobi polynomials with their norm constants, the harmonic double sum
//! `ln F`, and Gauss-Legendre quadrature rules.

use crate::error::{Error, Result};
use crate::model::ChannelConfig;

/// Euler-Mascheroni constant, 20 digits.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// `ln(pi)`.
const LN_PI: f64 = 1.1447298858494002;

/// `ln(2 * sqrt(e / pi))`.
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452;

/// Lanczos coefficients (Pugh, g = 10.900511, 11 terms). Relative error of
/// the resulting log-gamma is below 1e-13 over the positive axis.
const LANCZOS_DK: &[f64] = &[
    2.4857408913875355e-5,
    1.0514237858172197,
    -3.4568709722201625,
    4.512277094668948,
    -2.9828522532357664,
    1.056397115771267,
    -1.9542877319164587e-1,
    1.709705434044412e-2,
    -5.719261174043057e-4,
    4.633994733599057e-6,
    -2.7199490848860772e-9,
];

/// Auxiliary shift of the Lanczos approximation.
const LANCZOS_R: f64 = 10.900511;

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ln_gamma requires x > 0, got {x}"
        )));
    }
    let s = |shift: f64| {
        LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |acc, (k, dk)| acc + dk / (k as f64 + shift))
    };
    if x < 0.5 {
        // Reflection keeps full accuracy on (0, 0.5).
        let sum = s(-x);
        Ok(LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - sum.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).ln())
    } else {
        let sum = s(x - 1.0);
        Ok(sum.ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln())
    }
}

/// Digamma at a positive integer: `psi(1) = -gamma`,
/// `psi(n) = -gamma + sum_{k=1}^{n-1} 1/k`.
pub fn digamma_int(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "digamma_int requires n >= 1".into(),
        ));
    }
    let harmonic: f64 = (1..n).map(|k| 1.0 / k as f64).sum();
    Ok(harmonic - EULER_GAMMA)
}

/// Jacobi polynomial `P_k^{(a,b)}(x)` for integer `a, b >= 0` and
/// `x` in `[-1, 1]`, by upward three-term recurrence:
///
/// `P_{k+1} = (A_k x + B_k) P_k - C_k P_{k-1}`
///
/// with `A_k = (2k+a+b+1)(2k+a+b+2) / (2(k+1)(k+a+b+1))`,
/// `B_k = (a^2-b^2)(2k+a+b+1) / (2(k+1)(k+a+b+1)(2k+a+b))` and
/// `C_k = (k+a)(k+b)(2k+a+b+2) / ((k+1)(k+a+b+1)(2k+a+b))`.
/// Base cases `P_0 = 1` and `P_1 = ((a+b+2)x + (a-b)) / 2`.
pub fn jacobi_poly(k: usize, a: usize, b: usize, x: f64) -> f64 {
    debug_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&x));
    let (af, bf) = (a as f64, b as f64);
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = ((af + bf + 2.0) * x + (af - bf)) / 2.0;
    for j in 1..k {
        let jf = j as f64;
        let s = 2.0 * jf + af + bf;
        let a_j = (s + 1.0) * (s + 2.0) / (2.0 * (jf + 1.0) * (jf + af + bf + 1.0));
        let b_j = if a == b {
            0.0
        } else {
            (af * af - bf * bf) * (s + 1.0) / (2.0 * (jf + 1.0) * (jf + af + bf + 1.0) * s)
        };
        let c_j = (jf + af) * (jf + bf) * (s + 2.0) / ((jf + 1.0) * (jf + af + bf + 1.0) * s);
        let next = (a_j * x + b_j) * cur - c_j * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Ratio `B_k / A_k` of the recurrence coefficients in simplified form
/// `(a^2 - b^2) / ((2k+a+b)(2k+a+b+2))`, with the convention that it is 0
/// whenever `a = b` (covers the 0/0 at `k = 0`, `a + b = 0`).
pub fn jacobi_recurrence_ratio(k: usize, a: usize, b: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let (af, bf) = (a as f64, b as f64);
    let s = 2.0 * k as f64 + af + bf;
    (af * af - bf * bf) / (s * (s + 2.0))
}

/// Squared-norm constant of the Jacobi polynomials,
/// `e_{k,a,b} = Gamma(k+a+1) Gamma(k+b+1) / (k! (2k+a+b+1) Gamma(k+a+b+1))`,
/// so that the weighted product over `[-1, 1]` equals `2^{a+b+1} e_{k,a,b}`.
pub fn jacobi_norm_e(k: usize, a: usize, b: usize) -> f64 {
    let lg = |v: usize| ln_gamma(v as f64).expect("argument is a positive integer");
    let ln_e = lg(k + a + 1) + lg(k + b + 1)
        - lg(k + 1)
        - ((2 * k + a + b + 1) as f64).ln()
        - lg(k + a + b + 1);
    ln_e.exp()
}

/// Harmonic double sum `ln F = sum_{j=0}^{m_t-1} sum_{k=0}^{m-m_r-1}
/// 1/(m_r + k - j)`, the log of the geometric-mean correction in the
/// capacity lower bound. Zero when `m_r = m` (empty inner sum).
///
/// Requires `m_t <= m_r` so every denominator is positive.
pub fn ln_f(cfg: &ChannelConfig) -> Result<f64> {
    let (m, mt, mr) = (cfg.modes(), cfg.transmit(), cfg.receive());
    if mt > mr {
        return Err(Error::NotCanonical(format!(
            "ln_f requires m_t <= m_r, got {cfg}"
        )));
    }
    let mut sum = 0.0;
    for j in 0..mt {
        for k in 0..m.saturating_sub(mr) {
            sum += 1.0 / (mr + k - j) as f64;
        }
    }
    Ok(sum)
}

/// Gauss-Legendre quadrature rule on `[-1, 1]`.
///
/// Nodes are strictly increasing and symmetric about 0; weights are positive
/// and sum to 2. Exact for polynomials up to degree `2 * order - 1`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[lo, hi]` by affine mapping of the rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Builds the Gauss-Legendre rule of the given order (1..=2048).
///
/// Nodes are found by Newton iteration on the Legendre recurrence; each root
/// converges to ~1e-15 in a handful of steps from the Chebyshev-like initial
/// guess. Symmetry is enforced exactly by mirroring the computed half.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > 2048 {
        return Err(Error::QuadratureOrder {
            order,
            reason: "supported range is 1..=2048".into(),
        });
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Root i counted from the upper end, initial guess from the
        // asymptotic Chebyshev angles.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre value and derivative at x by upward recurrence.
            let mut p_prev = 1.0;
            let mut p = x;
            for j in 1..n {
                let jf = j as f64;
                let p_next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
                p_prev = p;
                p = p_next;
            }
            dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // One clean evaluation of the derivative at the converged node.
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}
