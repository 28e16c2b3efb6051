use thiserror::Error;

/// Errors raised by the expansion, the selection procedures and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("regulator Z must be positive and finite, got {0}")]
    NonPositiveRegulator(f64),

    #[error("quadratic ratio g must be finite and >= 0, got {0}")]
    InvalidCoupling(f64),

    #[error("energy unit must be finite and > 0, got {0}")]
    InvalidEnergyUnit(f64),

    #[error("perturbative order {0} is outside 0..=3")]
    OrderOutOfRange(u32),

    #[error("invalid search window [{z_min}, {z_max}] with {samples} samples")]
    InvalidWindow { z_min: f64, z_max: f64, samples: usize },

    #[error("no sign change found in Z window [{z_min}, {z_max}]")]
    NoRoot { z_min: f64, z_max: f64 },

    #[error("no stationary point found in Z window [{z_min}, {z_max}]")]
    NoStationaryPoint { z_min: f64, z_max: f64 },

    #[error("no local minimum found in Z window [{z_min}, {z_max}]")]
    NoLocalMinimum { z_min: f64, z_max: f64 },

    #[error("spread needs at least two local minima, found {found}")]
    TooFewMinima { found: usize },

    #[error("requested {count} eigenvalues from a matrix of dimension {dim}")]
    TooManyEigenvalues { count: usize, dim: usize },

    #[error("tridiagonal QL iteration did not converge for eigenvalue {index}")]
    EigenNoConvergence { index: usize },

    #[error("invalid oracle configuration: {0}")]
    InvalidOracleConfig(String),

    #[error(
        "oracle not converged after {doublings} basis doublings (last relative change {last_change:e})"
    )]
    OracleNotConverged {
        doublings: u32,
        last_change: f64,
        energies: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
