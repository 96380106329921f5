use thiserror::Error;

/// Errors reported by the capacity, sampling, and linear-algebra layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A channel configuration violated `1 <= m_t <= m`, `1 <= m_r <= m`.
    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),

    /// An operation that requires a canonical configuration
    /// (`m_t <= m_r`, `m_t + m_r <= m`) received a non-canonical one.
    #[error("configuration is not canonical ({0}); call canonicalize first")]
    NotCanonical(String),

    /// A numeric argument was outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Requested quadrature order is outside the supported range or below
    /// the minimum needed for the integrand degree.
    #[error("quadrature order {order} not accepted: {reason}")]
    QuadratureOrder { order: usize, reason: String },

    /// QR hit a zero pivot; the input was rank deficient.
    #[error("matrix is rank deficient (zero pivot at column {0})")]
    RankDeficient(usize),

    /// A matrix expected to be Hermitian was not, beyond tolerance.
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),

    /// Cholesky hit a non-positive pivot.
    #[error("matrix is not positive definite (pivot {pivot:.3e} at index {index})")]
    NotPositiveDefinite { pivot: f64, index: usize },

    /// Wrapper for I/O failures in the CLI layer.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
