//! Channel configuration, SNR handling, and the canonical reduction that
//! every capacity computation applies first.
//!
//! A fiber link with `m` available modes, `m_t` excited transmit channels and
//! `m_r` excited receive channels reduces to a *canonical* configuration with
//! `m_t <= m_r` and `m_t + m_r <= m`. Configurations with `m_t + m_r > m`
//! carry `m_t + m_r - m` transmission eigenvalues pinned at 1, each
//! contributing `ln(1 + rho)` deterministically; the remainder behaves like
//! the reduced configuration `(m - m_r, m - m_t)` on the same `m` modes.

use crate::error::{Error, Result};

/// Channel configuration: total modes `m`, excited transmit channels `m_t`,
/// excited receive channels `m_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelConfig {
    modes: usize,
    transmit: usize,
    receive: usize,
}

impl ChannelConfig {
    /// Validates `1 <= m_t <= m` and `1 <= m_r <= m`. No ordering between
    /// `m_t` and `m_r` is required here; [`canonicalize`] handles that.
    pub fn new(modes: usize, transmit: usize, receive: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidConfig("m must be >= 1".into()));
        }
        if transmit == 0 || transmit > modes {
            return Err(Error::InvalidConfig(format!(
                "m_t = {transmit} must satisfy 1 <= m_t <= m = {modes}"
            )));
        }
        if receive == 0 || receive > modes {
            return Err(Error::InvalidConfig(format!(
                "m_r = {receive} must satisfy 1 <= m_r <= m = {modes}"
            )));
        }
        Ok(Self {
            modes,
            transmit,
            receive,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn transmit(&self) -> usize {
        self.transmit
    }

    pub fn receive(&self) -> usize {
        self.receive
    }

    /// Transmit/receive swap. The capacity is invariant under it.
    pub fn swapped(&self) -> Self {
        Self {
            modes: self.modes,
            transmit: self.receive,
            receive: self.transmit,
        }
    }

    /// `true` when `m_t <= m_r` and `m_t + m_r <= m`.
    pub fn is_canonical(&self) -> bool {
        self.transmit <= self.receive && self.transmit + self.receive <= self.modes
    }

    /// Short label used in figure CSV output, e.g. `m6_mt2_mr2`.
    pub fn label(&self) -> String {
        format!("m{}_mt{}_mr{}", self.modes, self.transmit, self.receive)
    }
}

impl std::fmt::Display for ChannelConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(m={}, m_t={}, m_r={})",
            self.modes, self.transmit, self.receive
        )
    }
}

/// Jacobi-ensemble parameters of a canonical configuration:
/// `a = m_r - m_t`, `b = m - m_r - m_t`, and `n = m_t` eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobiParams {
    /// Exponent of `lambda` in the eigenvalue weight.
    pub a: usize,
    /// Exponent of `1 - lambda` in the eigenvalue weight.
    pub b: usize,
    /// Number of eigenvalues.
    pub n: usize,
}

/// Derives the ensemble parameters of a canonical configuration.
///
/// Rejects non-canonical input: the exponents would go negative.
pub fn jacobi_params(cfg: &ChannelConfig) -> Result<JacobiParams> {
    if !cfg.is_canonical() {
        return Err(Error::NotCanonical(cfg.to_string()));
    }
    Ok(JacobiParams {
        a: cfg.receive() - cfg.transmit(),
        b: cfg.modes() - cfg.receive() - cfg.transmit(),
        n: cfg.transmit(),
    })
}

/// Linear signal-to-noise ratio `rho`. Decibels exist only at the CLI
/// boundary; every formula works with the linear value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snr {
    rho: f64,
}

impl Snr {
    /// Builds from a linear ratio; rejects negative or non-finite values.
    pub fn from_linear(rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "linear SNR must be finite and >= 0, got {rho}"
            )));
        }
        Ok(Self { rho })
    }

    /// Builds from a value in dB: `rho = 10^(db/10)`.
    pub fn from_db(db: f64) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "SNR in dB must be finite, got {db}"
            )));
        }
        Ok(Self {
            rho: 10f64.powf(db / 10.0),
        })
    }

    pub fn linear(&self) -> f64 {
        self.rho
    }

    pub fn db(&self) -> f64 {
        10.0 * self.rho.log10()
    }
}

/// Result of the canonical reduction.
///
/// Capacity(original, rho) = `pinned * ln(1 + rho)` + Capacity(reduced, rho)
/// for every `rho >= 0`. `reduced` is `None` when the reduction exhausts all
/// channels (full unitary case), in which case the second term is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Number of transmission eigenvalues pinned at 1, each contributing
    /// `ln(1 + rho)`.
    pub pinned: usize,
    /// Canonical remainder, if any channels remain.
    pub reduced: Option<ChannelConfig>,
}

impl CanonicalForm {
    /// The deterministic `pinned * ln(1 + rho)` contribution.
    pub fn pinned_capacity(&self, snr: Snr) -> f64 {
        self.pinned as f64 * (1.0 + snr.linear()).ln()
    }
}

/// Reduces an arbitrary configuration to canonical form: swap so that
/// `m_t <= m_r`, then peel off the `m_t + m_r - m` pinned eigenvalues when
/// `m_t + m_r > m`. The result satisfies `m_t <= m_r`, `m_t + m_r <= m`, or
/// is empty. Idempotent on canonical input.
pub fn canonicalize(cfg: &ChannelConfig) -> CanonicalForm {
    let ordered = if cfg.receive() < cfg.transmit() {
        cfg.swapped()
    } else {
        *cfg
    };
    let (m, mt, mr) = (ordered.modes(), ordered.transmit(), ordered.receive());
    if mt + mr <= m {
        return CanonicalForm {
            pinned: 0,
            reduced: Some(ordered),
        };
    }
    let pinned = mt + mr - m;
    // With mt <= mr the reduced pair (m - mr, m - mt) is already ordered.
    let (rt, rr) = (m - mr, m - mt);
    if rt == 0 {
        return CanonicalForm {
            pinned,
            reduced: None,
        };
    }
    CanonicalForm {
        pinned,
        reduced: Some(ChannelConfig::new(m, rt, rr).expect("reduction preserves validity")),
    }
}

/// Converts a value in nats to bits (`1 nat = 1/ln 2 bits`).
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn snr_from_db_round_values() {
        assert_relative_eq!(Snr::from_db(0.0).unwrap().linear(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(Snr::from_db(10.0).unwrap().linear(), 10.0, epsilon = 1e-12);
        assert_relative_eq!(Snr::from_db(-10.0).unwrap().linear(), 0.1, epsilon = 1e-12);
    }

    #[test]
    fn snr_rejects_bad_input() {
        assert!(Snr::from_db(f64::NAN).is_err());
        assert!(Snr::from_db(f64::INFINITY).is_err());
        assert!(Snr::from_linear(-1.0).is_err());
        assert!(Snr::from_linear(f64::NAN).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(ChannelConfig::new(6, 2, 2).is_ok());
        assert!(ChannelConfig::new(0, 1, 1).is_err());
        assert!(ChannelConfig::new(4, 0, 2).is_err());
        assert!(ChannelConfig::new(4, 5, 2).is_err());
        assert!(ChannelConfig::new(4, 2, 0).is_err());
        assert!(ChannelConfig::new(4, 2, 5).is_err());
    }

    #[test]
    fn canonicalize_swaps_transmit_heavy_config() {
        let cfg = ChannelConfig::new(16, 5, 3).unwrap();
        let canon = canonicalize(&cfg);
        assert_eq!(canon.pinned, 0);
        let red = canon.reduced.unwrap();
        assert_eq!(
            (red.modes(), red.transmit(), red.receive()),
            (16, 3, 5)
        );
    }

    #[test]
    fn canonicalize_peels_pinned_eigenvalues() {
        let cfg = ChannelConfig::new(4, 3, 3).unwrap();
        let canon = canonicalize(&cfg);
        assert_eq!(canon.pinned, 2);
        let red = canon.reduced.unwrap();
        assert_eq!((red.modes(), red.transmit(), red.receive()), (4, 1, 1));
    }

    #[test]
    fn canonicalize_full_unitary_is_empty() {
        let cfg = ChannelConfig::new(2, 2, 2).unwrap();
        let canon = canonicalize(&cfg);
        assert_eq!(canon.pinned, 2);
        assert!(canon.reduced.is_none());
        let rho = Snr::from_linear(3.0).unwrap();
        assert_relative_eq!(canon.pinned_capacity(rho), 2.0 * 4.0f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for &(m, mt, mr) in &[(6, 2, 2), (16, 5, 3), (4, 3, 3), (64, 40, 40), (2, 1, 2)] {
            let cfg = ChannelConfig::new(m, mt, mr).unwrap();
            if let Some(red) = canonicalize(&cfg).reduced {
                let again = canonicalize(&red);
                assert_eq!(again.pinned, 0);
                assert_eq!(again.reduced, Some(red));
            }
        }
    }

    #[test]
    fn jacobi_params_examples() {
        let p = jacobi_params(&ChannelConfig::new(6, 2, 2).unwrap()).unwrap();
        assert_eq!((p.a, p.b, p.n), (0, 2, 2));
        let p = jacobi_params(&ChannelConfig::new(16, 4, 10).unwrap()).unwrap();
        assert_eq!((p.a, p.b, p.n), (6, 2, 4));
        let p = jacobi_params(&ChannelConfig::new(2, 1, 1).unwrap()).unwrap();
        assert_eq!((p.a, p.b, p.n), (0, 0, 1));
        assert!(jacobi_params(&ChannelConfig::new(4, 3, 3).unwrap()).is_err());
        assert!(jacobi_params(&ChannelConfig::new(16, 5, 3).unwrap()).is_err());
    }

    #[test]
    fn nats_to_bits_examples() {
        assert_eq!(nats_to_bits(0.0), 0.0);
        assert_relative_eq!(nats_to_bits(std::f64::consts::LN_2), 1.0, epsilon = 1e-15);
        assert_relative_eq!(nats_to_bits(2.0 * std::f64::consts::LN_2), 2.0, epsilon = 1e-15);
    }
}
