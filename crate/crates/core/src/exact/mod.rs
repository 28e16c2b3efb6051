//! Reference eigenvalues by diagonalizing `H = p²/2 + m²q²/2 + M³q⁴/4` in a
//! truncated harmonic-oscillator basis.
//!
//! The basis size is doubled until the requested levels stop moving. Matrix
//! elements come from the ladder expansions of `q²`, `p²` and `q⁴`, so `H` is
//! banded with nonzero entries only at offsets 0, 2 and 4.

mod banded;
mod eigen;

pub use banded::{BandedSymmetric, HALF_BANDWIDTH};
pub use eigen::{eigen_lowest, parity_spectra, symmetric_eigenvalues, tridiagonal_eigenvalues, tridiagonalize};

use crate::error::{Error, Result};
use crate::model::OscillatorModel;

/// Absolute coefficients of the Hamiltonian: `m` and `M` in caller units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub mass: f64,
    pub quartic_scale: f64,
}

impl Couplings {
    pub fn new(mass: f64, quartic_scale: f64) -> Self {
        Self { mass, quartic_scale }
    }

    /// `m = √g`, `M = 1`.
    pub fn from_model(model: &OscillatorModel) -> Self {
        Self { mass: model.mass_ratio(), quartic_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Frequency of the expansion basis; `None` selects [`default_basis_omega`].
    pub basis_omega: Option<f64>,
    pub initial_size: usize,
    pub rel_tol: f64,
    pub max_doublings: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { basis_omega: None, initial_size: 32, rel_tol: 1e-10, max_doublings: 6 }
    }
}

impl OracleConfig {
    pub fn with_tolerance(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_size < 16 {
            return Err(Error::InvalidOracleConfig(format!(
                "initial_size must be at least 16, got {}",
                self.initial_size
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidOracleConfig(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if let Some(w) = self.basis_omega {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidOracleConfig(format!("basis_omega must be > 0, got {w}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// `E_0 .. E_{n_max}`.
    pub energies: Vec<f64>,
    pub basis_used: usize,
    pub basis_omega: f64,
    pub converged: bool,
    /// Relative change of each level over the last doubling.
    pub per_level_error_estimate: Vec<f64>,
}

impl OracleResult {
    pub fn energy(&self, n: u32) -> Option<f64> {
        self.energies.get(n as usize).copied()
    }
}

/// `ω = max(m, M (n_max+1)^{1/3})`, the natural frequency of the quartic well
/// near the highest requested level.
pub fn default_basis_omega(c: &Couplings, n_max: u32) -> f64 {
    c.mass.max(c.quartic_scale * f64::from(n_max + 1).cbrt())
}

/// Matrix of `H` in the number basis of an oscillator of frequency `omega`.
pub fn build_hamiltonian(c: &Couplings, omega: f64, size: usize) -> Result<BandedSymmetric> {
    if size < 8 {
        return Err(Error::InvalidOracleConfig(format!("basis size must be at least 8, got {size}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidOracleConfig(format!("basis_omega must be > 0, got {omega}")));
    }
    let m2 = c.mass * c.mass;
    let quartic = c.quartic_scale.powi(3);
    let mut h = BandedSymmetric::zeros(size);
    for k in 0..size {
        let kf = k as f64;
        // ⟨k|p²|k⟩ = ω(2k+1)/2, ⟨k|q²|k⟩ = (2k+1)/(2ω), ⟨k|q⁴|k⟩ = 3(2k²+2k+1)/(4ω²)
        let diag = omega * (2.0 * kf + 1.0) / 4.0
            + m2 * (2.0 * kf + 1.0) / (4.0 * omega)
            + quartic * 3.0 * (2.0 * kf * kf + 2.0 * kf + 1.0) / (16.0 * omega * omega);
        h.set(k, k, diag);
        if k + 2 < size {
            let s2 = ((kf + 1.0) * (kf + 2.0)).sqrt();
            let v = -omega * s2 / 4.0
                + m2 * s2 / (4.0 * omega)
                + quartic * (4.0 * kf + 6.0) * s2 / (16.0 * omega * omega);
            h.set(k, k + 2, v);
        }
        if k + 4 < size {
            let s4 = ((kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0)).sqrt();
            h.set(k, k + 4, quartic * s4 / (16.0 * omega * omega));
        }
    }
    Ok(h)
}

/// Converged levels `0..=n_max` in the units of `c`.
pub fn exact_spectrum(c: &Couplings, n_max: u32, config: &OracleConfig) -> Result<OracleResult> {
    config.validate()?;
    if !(c.mass >= 0.0 && c.quartic_scale >= 0.0) || (c.mass == 0.0 && c.quartic_scale == 0.0) {
        return Err(Error::InvalidOracleConfig(format!(
            "need m >= 0, M >= 0 and not both zero, got m = {}, M = {}",
            c.mass, c.quartic_scale
        )));
    }
    let omega = config.basis_omega.unwrap_or_else(|| default_basis_omega(c, n_max));
    let count = n_max as usize + 1;
    let mut size = config.initial_size;
    let mut previous: Option<Vec<f64>> = None;
    let mut last_change = f64::INFINITY;

    for _ in 0..=config.max_doublings {
        if size >= count {
            let current = eigen_lowest(&build_hamiltonian(c, omega, size)?, count)?;
            if let Some(prev) = &previous {
                let changes: Vec<f64> = current
                    .iter()
                    .zip(prev)
                    .map(|(a, b)| ((a - b) / a).abs())
                    .collect();
                last_change = changes.iter().copied().fold(0.0, f64::max);
                if last_change < config.rel_tol {
                    return Ok(OracleResult {
                        energies: current,
                        basis_used: size,
                        basis_omega: omega,
                        converged: true,
                        per_level_error_estimate: changes,
                    });
                }
            }
            previous = Some(current);
        }
        size *= 2;
    }
    Err(Error::OracleNotConverged {
        doublings: config.max_doublings,
        last_change,
        energies: previous.unwrap_or_default(),
    })
}

/// Converged levels `0..=n_max` in units of `M` for the dimensionless model.
pub fn exact_energies(model: &OscillatorModel, n_max: u32, config: &OracleConfig) -> Result<OracleResult> {
    exact_spectrum(&Couplings::from_model(model), n_max, config)
}
