//! Ergodic capacity of MIMO Jacobi-fading channels.
//!
//! Strong crosstalk in a multi-core or multi-mode optical fiber turns the
//! link into a MIMO channel whose transfer matrix is a truncated
//! Haar-distributed unitary; the eigenvalues of its Gram matrix follow the
//! Jacobi unitary ensemble. This crate computes the ergodic capacity of
//! such channels along three independent routes and provides the
//! closed-form bounds and asymptotics that sandwich it:
//!
//! * [`capacity::capacity_monte_carlo`] — simulation over Haar-sampled
//!   channels with deterministic per-trial substreams,
//! * [`capacity::capacity_quadrature`] — exact integration of
//!   `ln(1 + rho lambda)` against the eigenvalue marginal density,
//! * [`capacity::upper_bound`] / [`capacity::lower_bound`] — closed forms,
//!   with [`capacity::low_snr_approx`] and [`capacity::high_snr_approx`]
//!   covering the asymptotic regimes.
//!
//! Configurations with more excited channels than modes (`m_t + m_r > m`)
//! are handled through [`model::canonicalize`], which peels off the
//! deterministic unit eigenvalues.
//!
//! All capacities are in nats per channel use; convert at the edge with
//! [`model::nats_to_bits`].
//!
//! # Quick start
//!
//! ```
//! use jacobi_capacity::model::{ChannelConfig, Snr};
//! use jacobi_capacity::capacity;
//!
//! let cfg = ChannelConfig::new(6, 2, 2).unwrap();
//! let snr = Snr::from_db(10.0).unwrap();
//!
//! let exact = capacity::capacity_quadrature(&cfg, snr, 64).unwrap();
//! let lower = capacity::lower_bound(&cfg, snr);
//! let upper = capacity::upper_bound(&cfg, snr);
//! assert!(lower < exact && exact < upper);
//! ```
//!
//! The `examples/` directory holds one runnable program per capability
//! (point queries, sweeps, bound tightness, eigenvalue densities, the
//! determinant decomposition, mode-excess reduction, figure data, and the
//! validation report); `cargo run --example <name>` runs any of them. The
//! same functionality is scriptable through the thin `jacobi-capacity`
//! binary.

pub mod capacity;
pub mod cli;
pub mod density;
pub mod error;
pub mod linalg;
pub mod model;
pub mod randmat;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use model::{ChannelConfig, Snr};
