//! Dimensionless parameterization of `H = p²/2 + m²q²/2 + M³q⁴/4`.
//!
//! Every kernel in this crate works in units where `M = 1`. The only
//! coupling left is `g = (m/M)²`; `energy_unit` carries `M` in caller units
//! and is applied when results leave the crate.

use crate::error::{Error, Result};

/// Quantum number of an oscillator level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(pub u32);

impl Level {
    pub fn new(n: u32) -> Self {
        Level(n)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl From<u32> for Level {
    fn from(n: u32) -> Self {
        Level(n)
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The weak-coupling parameter `λ = (M/m)³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Finite(f64),
    /// `m = 0`: the pure quartic oscillator.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    g: f64,
    energy_unit: f64,
}

impl OscillatorModel {
    pub fn new(g: f64, energy_unit: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::InvalidCoupling(g));
        }
        if !(energy_unit.is_finite() && energy_unit > 0.0) {
            return Err(Error::InvalidEnergyUnit(energy_unit));
        }
        Ok(Self { g, energy_unit })
    }

    /// Model with `M = 1`.
    pub fn with_g(g: f64) -> Result<Self> {
        Self::new(g, 1.0)
    }

    pub fn pure_quartic() -> Self {
        Self { g: 0.0, energy_unit: 1.0 }
    }

    /// Builds the model from `λ = (M/m)³` via `g = λ^{-2/3}`.
    pub fn from_lambda(lambda: f64, energy_unit: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidCoupling(lambda));
        }
        Self::new(lambda.powf(-2.0 / 3.0), energy_unit)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn energy_unit(&self) -> f64 {
        self.energy_unit
    }

    /// `m/M`.
    pub fn mass_ratio(&self) -> f64 {
        self.g.sqrt()
    }

    /// Converts a dimensionless energy (units of `M`) into caller units.
    pub fn to_caller_units(&self, energy: f64) -> f64 {
        energy * self.energy_unit
    }
}

pub(crate) fn check_regulator(z: f64) -> Result<()> {
    if z.is_finite() && z > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveRegulator(z))
    }
}

/// `X = m²/Ω² = g · Z^{-2/3}`.
pub fn x_of(z: f64, model: &OscillatorModel) -> Result<f64> {
    check_regulator(z)?;
    Ok(model.g * z.powf(-2.0 / 3.0))
}

pub fn lambda_of(model: &OscillatorModel) -> Coupling {
    if model.g == 0.0 {
        Coupling::Infinite
    } else {
        Coupling::Finite(model.g.powf(-1.5))
    }
}
