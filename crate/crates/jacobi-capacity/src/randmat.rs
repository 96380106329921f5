//! Random sampling: Ginibre matrices, Haar-distributed unitaries, truncated
//! channel matrices, Jacobi Gram matrices, beta variates, and the
//! product-of-betas representation of the channel log-determinant.
//!
//! Every sampler is keyed by an [`RngStream`] value, a `(seed, stream)` pair
//! that selects a reproducible substream of a counter-based generator.
//! Identical pairs produce identical variates on every platform, so Monte
//! Carlo trials can be distributed over threads in any order without
//! changing results.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{qr_unitary, ComplexMatrix};
use crate::model::ChannelConfig;

/// Seed plus substream selector for deterministic parallel sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    seed: u64,
    stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Instantiates the generator positioned at this substream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// One standard complex Gaussian entry: real and imaginary parts are
/// independent `N(0, 1/2)`, so `E|z|^2 = 1`.
fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(
        re * std::f64::consts::FRAC_1_SQRT_2,
        im * std::f64::consts::FRAC_1_SQRT_2,
    )
}

fn ginibre_with<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn sample_ginibre(rows: usize, cols: usize, stream: RngStream) -> ComplexMatrix {
    ginibre_with(rows, cols, &mut stream.rng())
}

/// Haar-distributed isometry with `rows >= cols` orthonormal columns:
/// QR of a Ginibre matrix followed by the column phase fix
/// `Lambda = diag(R_jj / |R_jj|)`. The phase fix is mandatory; plain QR
/// output is not Haar-distributed. For `rows == cols` this is a Haar
/// unitary. Resamples on the measure-zero rank-deficiency event.
fn haar_isometry_with<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ginibre_with(rows, cols, rng);
        let (mut q, r) = match qr_unitary(&g) {
            Ok(qr) => qr,
            Err(Error::RankDeficient(_)) => continue,
            Err(e) => unreachable!("unexpected QR failure on random input: {e}"),
        };
        for j in 0..cols {
            let d = r[(j, j)];
            let phase = d / d.norm();
            for i in 0..rows {
                let val = q[(i, j)] * phase;
                q[(i, j)] = val;
            }
        }
        return q;
    }
}

/// Haar-distributed unitary of the given dimension.
pub fn sample_haar_unitary(dim: usize, stream: RngStream) -> ComplexMatrix {
    haar_isometry_with(dim, dim, &mut stream.rng())
}

/// Effective channel matrix: the `m_r x m_t` upper-left corner of a Haar
/// unitary of dimension `m`. Requires `m_t <= m_r` (swap first otherwise);
/// `m_t + m_r` may exceed `m`.
///
/// Sampled economically as the first `m_r` rows of a Haar isometry with
/// `m_t` columns, which has the same distribution as truncating the full
/// `m x m` unitary.
pub fn sample_channel(cfg: &ChannelConfig, stream: RngStream) -> Result<ComplexMatrix> {
    let (m, mt, mr) = (cfg.modes(), cfg.transmit(), cfg.receive());
    if mt > mr {
        return Err(Error::NotCanonical(format!(
            "sample_channel requires m_t <= m_r, got {cfg}"
        )));
    }
    let iso = haar_isometry_with(m, mt, &mut stream.rng());
    Ok(iso.top_left(mr, mt))
}

/// Jacobi-distributed covariance matrix `J = (1/m_t) H^H H`, Hermitian
/// positive semidefinite of dimension `m_t`.
pub fn sample_jacobi_matrix(cfg: &ChannelConfig, stream: RngStream) -> Result<ComplexMatrix> {
    let h = sample_channel(cfg, stream)?;
    let mut g = h.gram();
    let inv = 1.0 / cfg.transmit() as f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let scaled = g[(i, j)] * inv;
            g[(i, j)] = scaled;
        }
    }
    Ok(g)
}

fn beta_with<R: Rng>(alpha: f64, beta: f64, rng: &mut R) -> f64 {
    Beta::new(alpha, beta)
        .expect("beta shape parameters are positive")
        .sample(rng)
}

/// Beta-distributed variate with shape parameters `alpha, beta > 0`.
pub fn sample_beta(alpha: f64, beta: f64, stream: RngStream) -> Result<f64> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "beta shape parameters must be positive, got ({alpha}, {beta})"
        )));
    }
    Ok(beta_with(alpha, beta, &mut stream.rng()))
}

/// Draws `ln det(H^H H)` from its product-of-independent-betas law:
/// `sum_{j=1}^{m_t} ln T_j` with `T_j ~ Beta(m_r - j + 1, m - m_r)`.
/// When `m = m_r` every factor is 1 and the result is exactly 0.
pub fn sample_logdet_beta_product(cfg: &ChannelConfig, stream: RngStream) -> Result<f64> {
    let (m, mt, mr) = (cfg.modes(), cfg.transmit(), cfg.receive());
    if mt > mr {
        return Err(Error::NotCanonical(format!(
            "beta decomposition requires m_t <= m_r, got {cfg}"
        )));
    }
    if m == mr {
        return Ok(0.0);
    }
    let mut rng = stream.rng();
    let tail = (m - mr) as f64;
    let mut sum = 0.0;
    for j in 1..=mt {
        let alpha = (mr - j + 1) as f64;
        sum += beta_with(alpha, tail, &mut rng).ln();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use crate::specfun::digamma_int;
    use approx::assert_relative_eq;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn ginibre_entry_moments() {
        // Pool entries of many draws: zero mean, unit |z|^2.
        let mut re = Vec::new();
        let mut sq = Vec::new();
        for t in 0..100 {
            let g = sample_ginibre(32, 32, RngStream::new(1, t));
            for i in 0..32 {
                for j in 0..32 {
                    re.push(g[(i, j)].re);
                    sq.push(g[(i, j)].norm_sqr());
                }
            }
        }
        let (m, se) = mean_and_se(&re);
        assert!(m.abs() <= 5.0 * se, "mean {m:.4e} vs se {se:.4e}");
        let (m2, se2) = mean_and_se(&sq);
        assert!((m2 - 1.0).abs() <= 5.0 * se2, "|z|^2 mean {m2:.5}");
    }

    #[test]
    fn ginibre_is_deterministic_per_stream() {
        let a = sample_ginibre(8, 8, RngStream::new(42, 7));
        let b = sample_ginibre(8, 8, RngStream::new(42, 7));
        assert_eq!(a, b);
        let c = sample_ginibre(8, 8, RngStream::new(42, 8));
        assert_ne!(a, c);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for &dim in &[2usize, 5, 16, 64] {
            let u = sample_haar_unitary(dim, RngStream::new(3, dim as u64));
            let gram = u.gram();
            let mut worst = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((gram[(i, j)] - Complex64::new(expect, 0.0)).norm());
                }
            }
            assert!(worst <= 1e-12 * dim as f64, "unitarity error {worst:.3e}");
        }
    }

    #[test]
    fn haar_entry_second_moment_is_one_over_dim() {
        let dim = 4;
        let mut sq = Vec::new();
        for t in 0..10_000 {
            let u = sample_haar_unitary(dim, RngStream::new(9, t));
            sq.push(u[(1, 2)].norm_sqr());
        }
        let (m, se) = mean_and_se(&sq);
        assert!(
            (m - 1.0 / dim as f64).abs() <= 5.0 * se,
            "E|U_ij|^2 = {m:.5} vs 1/dim = {:.5}",
            1.0 / dim as f64
        );
    }

    #[test]
    fn haar_entry_mean_is_zero() {
        let mut re = Vec::new();
        let mut im = Vec::new();
        for t in 0..10_000 {
            let u = sample_haar_unitary(3, RngStream::new(10, t));
            re.push(u[(0, 0)].re);
            im.push(u[(0, 0)].im);
        }
        let (mr, ser) = mean_and_se(&re);
        let (mi, sei) = mean_and_se(&im);
        assert!(mr.abs() <= 5.0 * ser);
        assert!(mi.abs() <= 5.0 * sei);
    }

    #[test]
    fn haar_permutation_invariance_proxy() {
        // Mean of |(PU)_11|^2 equals mean of |U_11|^2 for a fixed row
        // permutation P (left invariance of the Haar measure).
        let dim = 4;
        let perm = [2usize, 0, 3, 1];
        let mut plain = Vec::new();
        let mut permuted = Vec::new();
        for t in 0..10_000 {
            let u = sample_haar_unitary(dim, RngStream::new(11, t));
            plain.push(u[(0, 0)].norm_sqr());
            permuted.push(u[(perm[0], 0)].norm_sqr());
        }
        let (m1, se1) = mean_and_se(&plain);
        let (m2, se2) = mean_and_se(&permuted);
        let combined = (se1 * se1 + se2 * se2).sqrt();
        assert!(
            (m1 - m2).abs() <= 4.0 * combined,
            "invariance proxy: {m1:.5} vs {m2:.5}"
        );
    }

    #[test]
    fn channel_block_is_contractive() {
        let cfg = ChannelConfig::new(6, 2, 2).unwrap();
        for t in 0..50 {
            let h = sample_channel(&cfg, RngStream::new(12, t)).unwrap();
            assert_eq!((h.rows(), h.cols()), (2, 2));
            // Singular values of a unitary truncation lie in [0, 1]:
            // eigenvalues of H^H H stay within [0, 1 + slack].
            let vals = hermitian_eigenvalues(&h.gram()).unwrap();
            for v in vals {
                assert!(v >= -1e-10 && v <= 1.0 + 1e-10, "eigenvalue {v}");
            }
            // Column norms of a unitary block never exceed 1.
            for j in 0..2 {
                let norm: f64 = (0..2).map(|i| h[(i, j)].norm_sqr()).sum();
                assert!(norm <= 1.0 + 1e-10);
            }
        }
        let scalar_cfg = ChannelConfig::new(2, 1, 1).unwrap();
        let h = sample_channel(&scalar_cfg, RngStream::new(12, 99)).unwrap();
        assert!(h[(0, 0)].norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn channel_requires_swapped_input() {
        let cfg = ChannelConfig::new(16, 5, 3).unwrap();
        assert!(sample_channel(&cfg, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn channel_matches_full_unitary_truncation() {
        // The economical sampler must agree in distribution with truncating
        // a full Haar unitary; compare E|H_11|^2 = 1/m across both routes.
        let cfg = ChannelConfig::new(5, 2, 3).unwrap();
        let mut thin = Vec::new();
        let mut full = Vec::new();
        for t in 0..8_000 {
            let h = sample_channel(&cfg, RngStream::new(13, t)).unwrap();
            thin.push(h[(0, 0)].norm_sqr());
            let u = sample_haar_unitary(5, RngStream::new(14, t));
            full.push(u[(0, 0)].norm_sqr());
        }
        let (m1, se1) = mean_and_se(&thin);
        let (m2, se2) = mean_and_se(&full);
        let combined = (se1 * se1 + se2 * se2).sqrt();
        assert!((m1 - m2).abs() <= 4.0 * combined);
        assert!((m1 - 0.2).abs() <= 5.0 * se1);
    }

    #[test]
    fn jacobi_matrix_hermitian_and_scaled() {
        let cfg = ChannelConfig::new(6, 2, 2).unwrap();
        let j = sample_jacobi_matrix(&cfg, RngStream::new(15, 0)).unwrap();
        assert!(j.hermiticity_error() <= 1e-12);
        let vals = hermitian_eigenvalues(&j).unwrap();
        for v in vals {
            // Eigenvalues of H^H H lie in [0, 1]; J is scaled by 1/m_t.
            assert!(v >= -1e-10 && v <= 0.5 + 1e-10);
        }
    }

    #[test]
    fn scalar_jacobi_matrix_is_uniform() {
        // For (m=2, m_t=1, m_r=1), J = |H_11|^2 ~ Beta(1,1) = U(0,1).
        let cfg = ChannelConfig::new(2, 1, 1).unwrap();
        let xs: Vec<f64> = (0..100_000)
            .map(|t| {
                sample_jacobi_matrix(&cfg, RngStream::new(16, t)).unwrap()[(0, 0)].re
            })
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m - 0.5).abs() <= 5.0 * se, "uniform mean {m:.5}");
    }

    #[test]
    fn jacobi_trace_mean_matches_eigenvalue_law() {
        // trace(m_t J) = trace(H^H H) sums m_t eigenvalues of mean m_r/m
        // each, so its expectation is m_t m_r / m = 2/3 here.
        let cfg = ChannelConfig::new(6, 2, 2).unwrap();
        let xs: Vec<f64> = (0..10_000)
            .map(|t| {
                let j = sample_jacobi_matrix(&cfg, RngStream::new(17, t)).unwrap();
                2.0 * (j[(0, 0)].re + j[(1, 1)].re)
            })
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m - 2.0 / 3.0).abs() <= 5.0 * se, "trace mean {m:.5}");
    }

    #[test]
    fn beta_sampler_moments() {
        let uniform: Vec<f64> = (0..100_000)
            .map(|t| sample_beta(1.0, 1.0, RngStream::new(18, t)).unwrap())
            .collect();
        let (m, se) = mean_and_se(&uniform);
        assert!((m - 0.5).abs() <= 5.0 * se);

        let skewed: Vec<f64> = (0..100_000)
            .map(|t| sample_beta(2.0, 1.0, RngStream::new(19, t)).unwrap())
            .collect();
        let (m, se) = mean_and_se(&skewed);
        assert!((m - 2.0 / 3.0).abs() <= 5.0 * se);

        // Variance of Beta(3, 4) is 12/(49*8).
        let b34: Vec<f64> = (0..100_000)
            .map(|t| sample_beta(3.0, 4.0, RngStream::new(20, t)).unwrap())
            .collect();
        let mean = b34.iter().sum::<f64>() / b34.len() as f64;
        let devs: Vec<f64> = b34.iter().map(|x| (x - mean).powi(2)).collect();
        let (var, se_var) = mean_and_se(&devs);
        let expect = 12.0 / (49.0 * 8.0);
        assert!((var - expect).abs() <= 5.0 * se_var, "variance {var:.5}");

        assert!(sample_beta(0.0, 1.0, RngStream::new(0, 0)).is_err());
        assert!(sample_beta(1.0, -2.0, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn logdet_beta_product_uniform_case() {
        // (2,1,1): ln of a uniform variate has mean -1.
        let cfg = ChannelConfig::new(2, 1, 1).unwrap();
        let xs: Vec<f64> = (0..100_000)
            .map(|t| sample_logdet_beta_product(&cfg, RngStream::new(21, t)).unwrap())
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m + 1.0).abs() <= 5.0 * se, "E ln U = {m:.5}");
    }

    #[test]
    fn logdet_beta_product_digamma_mean() {
        // (6,2,2): mean is psi(2) - psi(6) + psi(1) - psi(5).
        let cfg = ChannelConfig::new(6, 2, 2).unwrap();
        let expect = digamma_int(2).unwrap() - digamma_int(6).unwrap() + digamma_int(1).unwrap()
            - digamma_int(5).unwrap();
        let xs: Vec<f64> = (0..100_000)
            .map(|t| sample_logdet_beta_product(&cfg, RngStream::new(22, t)).unwrap())
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m - expect).abs() <= 5.0 * se, "{m:.5} vs {expect:.5}");
        assert_relative_eq!(expect, -101.0 / 30.0, epsilon = 1e-12);
    }

    #[test]
    fn logdet_beta_product_full_receive_is_zero() {
        let cfg = ChannelConfig::new(4, 2, 4).unwrap();
        for t in 0..10 {
            assert_eq!(
                sample_logdet_beta_product(&cfg, RngStream::new(23, t)).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn gram_logdet_matches_beta_product_moments() {
        // First two moments of ln det(H^H H) agree between the Haar-channel
        // route and the beta-product route, within 4 combined SEs.
        for (s, &(m, mt, mr)) in [(6usize, 2usize, 2usize), (8, 3, 3)].iter().enumerate() {
            let cfg = ChannelConfig::new(m, mt, mr).unwrap();
            let n = 10_000u64;
            let haar: Vec<f64> = (0..n)
                .map(|t| {
                    let h = sample_channel(&cfg, RngStream::new(24 + s as u64, t)).unwrap();
                    crate::linalg::cholesky_logdet(&h.gram()).unwrap()
                })
                .collect();
            let beta: Vec<f64> = (0..n)
                .map(|t| {
                    sample_logdet_beta_product(&cfg, RngStream::new(40 + s as u64, t)).unwrap()
                })
                .collect();
            let (m1, se1) = mean_and_se(&haar);
            let (m2, se2) = mean_and_se(&beta);
            let combined = (se1 * se1 + se2 * se2).sqrt();
            assert!(
                (m1 - m2).abs() <= 4.0 * combined,
                "first moments: {m1:.4} vs {m2:.4} at {cfg:?}"
            );
            let sq1: Vec<f64> = haar.iter().map(|x| x * x).collect();
            let sq2: Vec<f64> = beta.iter().map(|x| x * x).collect();
            let (q1, seq1) = mean_and_se(&sq1);
            let (q2, seq2) = mean_and_se(&sq2);
            let combined2 = (seq1 * seq1 + seq2 * seq2).sqrt();
            assert!(
                (q1 - q2).abs() <= 4.0 * combined2,
                "second moments: {q1:.4} vs {q2:.4} at {cfg:?}"
            );
        }
    }
}
