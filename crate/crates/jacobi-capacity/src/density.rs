//! Exact Jacobi-ensemble eigenvalue densities: the joint density of the
//! ordered eigenvalues with its Selberg normalization, and the
//! single-eigenvalue marginal built from Jacobi polynomials.
//!
//! Eigenvalues here are always the *unscaled* ones, i.e. of the Gram matrix
//! `H^H H`, supported on `[0, 1]`. All densities are assembled in log space
//! so large exponents (`a, b` up to ~10^2, `n` up to ~10^2) cannot overflow.

use crate::error::{Error, Result};
use crate::model::JacobiParams;
use crate::specfun::{jacobi_norm_e, jacobi_poly, ln_gamma};

/// Natural log of the normalization constant of the *ordered* joint
/// eigenvalue density:
///
/// `ln chi = sum_{j=0}^{n-1} [ln G(a+1+j) + ln G(b+1+j) + ln G(2+j)
///           - ln G(a+b+n+j+1)] - ln n!`
///
/// The product term is the Selberg integral of the weight over the full
/// cube `[0,1]^n` (note the zero-based index: the one-based variant that
/// sometimes appears in print fails to normalize even the `n = 1` beta
/// case); dividing by `n!` restricts it to the ordered simplex
/// `1 >= l_1 >= ... >= l_n >= 0` where the ordered density lives.
pub fn selberg_log_constant(p: &JacobiParams) -> f64 {
    ln_selberg_cube(p) - ln_factorial(p.n)
}

/// Selberg integral over the cube `[0,1]^n` (zero-based index form).
fn ln_selberg_cube(p: &JacobiParams) -> f64 {
    let lg = |v: usize| ln_gamma(v as f64).expect("argument is a positive integer");
    let (a, b, n) = (p.a, p.b, p.n);
    (0..n)
        .map(|j| lg(a + 1 + j) + lg(b + 1 + j) + lg(2 + j) - lg(a + b + n + j + 1))
        .sum()
}

/// The misprinted one-based variant of the normalization product, kept only
/// so the validation suite can report by how much it fails to normalize.
pub fn selberg_log_constant_shifted_index(p: &JacobiParams) -> f64 {
    let lg = |v: usize| ln_gamma(v as f64).expect("argument is a positive integer");
    let (a, b, n) = (p.a, p.b, p.n);
    (1..=n)
        .map(|j| lg(a + 1 + j) + lg(b + 1 + j) + lg(2 + j) - lg(a + b + n + j + 1) - lg(2))
        .sum()
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Joint density of the ordered eigenvalues at `lams` (descending, each in
/// `[0, 1]`):
///
/// `chi^{-1} prod_j l_j^a (1 - l_j)^b * V(l)^2`
///
/// with `V` the Vandermonde product of pairwise differences. The density is
/// 0 at coincident eigenvalues and at endpoints hit with a positive
/// exponent; `0^0 = 1` by convention. Unordered input is rejected.
pub fn joint_density(lams: &[f64], p: &JacobiParams) -> Result<f64> {
    if lams.len() != p.n {
        return Err(Error::InvalidArgument(format!(
            "expected {} eigenvalues, got {}",
            p.n,
            lams.len()
        )));
    }
    for pair in lams.windows(2) {
        if pair[0] < pair[1] {
            return Err(Error::InvalidArgument(
                "eigenvalues must be ordered descending".into(),
            ));
        }
    }
    for &l in lams {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {l} outside [0, 1]"
            )));
        }
    }
    let mut ln_val = -selberg_log_constant(p);
    for &l in lams {
        if p.a > 0 {
            if l == 0.0 {
                return Ok(0.0);
            }
            ln_val += p.a as f64 * l.ln();
        }
        if p.b > 0 {
            if l == 1.0 {
                return Ok(0.0);
            }
            ln_val += p.b as f64 * (1.0 - l).ln();
        }
    }
    for i in 0..lams.len() {
        for j in i + 1..lams.len() {
            let diff = lams[i] - lams[j];
            if diff == 0.0 {
                return Ok(0.0);
            }
            ln_val += 2.0 * diff.ln();
        }
    }
    Ok(ln_val.exp())
}

/// Marginal density of a uniformly chosen eigenvalue at `lam` in `[0, 1]`:
///
/// `f(l) = (1/n) sum_{k=0}^{n-1} e_{k,a,b}^{-1} l^a (1-l)^b
///         [P_k^{(a,b)}(1 - 2l)]^2`
///
/// Nonnegative everywhere and integrates to 1. Each term is assembled in
/// log space; the polynomial value itself is safe in linear arithmetic for
/// the parameter ranges used here.
pub fn marginal_density(lam: f64, p: &JacobiParams) -> f64 {
    assert!(
        (0.0..=1.0).contains(&lam),
        "marginal_density requires lam in [0, 1], got {lam}"
    );
    if (p.a > 0 && lam == 0.0) || (p.b > 0 && lam == 1.0) {
        return 0.0;
    }
    let mut ln_weight = 0.0;
    if p.a > 0 {
        ln_weight += p.a as f64 * lam.ln();
    }
    if p.b > 0 {
        ln_weight += p.b as f64 * (1.0 - lam).ln();
    }
    let x = 1.0 - 2.0 * lam;
    let mut sum = 0.0;
    for k in 0..p.n {
        let pk = jacobi_poly(k, p.a, p.b, x);
        if pk == 0.0 {
            continue;
        }
        let ln_e = jacobi_norm_e(k, p.a, p.b).ln();
        sum += (ln_weight - ln_e + 2.0 * pk.abs().ln()).exp();
    }
    sum / p.n as f64
}
