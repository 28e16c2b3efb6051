//! Weak-coupling Rayleigh-Schrödinger series `E_n = m Σ c_j(n) λ^j`,
//! `λ = (M/m)³`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::{Level, OscillatorModel};

type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq)]
pub struct RsCoefficients {
    pub n: Level,
    /// `c_0 .. c_3` as exact rationals.
    pub exact: [Q; 4],
}

impl RsCoefficients {
    pub fn c(&self, j: usize) -> f64 {
        let r = &self.exact[j];
        *r.numer() as f64 / *r.denom() as f64
    }

    pub fn as_f64(&self) -> [f64; 4] {
        std::array::from_fn(|j| self.c(j))
    }
}

pub fn rs_coeffs(n: Level) -> RsCoefficients {
    let k = i128::from(n.0);
    let q = |num: i128, den: i128| Q::new(num, den);
    RsCoefficients {
        n,
        exact: [
            q(2 * k + 1, 2),
            q(3 * (2 * k * k + 2 * k + 1), 16),
            q(-(34 * k.pow(3) + 51 * k * k + 59 * k + 21), 128),
            q(3 * (125 * k.pow(4) + 250 * k.pow(3) + 472 * k * k + 347 * k + 111), 1024),
        ],
    }
}

/// An energy in units of the harmonic mass `m`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HarmonicUnits(pub f64);

impl HarmonicUnits {
    /// Re-expresses the energy in units of `M`: `E/M = (E/m)·(m/M)`.
    pub fn to_quartic_units(self, model: &OscillatorModel) -> f64 {
        self.0 * model.mass_ratio()
    }
}

/// `Σ_{j ≤ jmax} c_j λ^j` in units of `m`.
pub fn rs_partial_sum(n: Level, lambda: f64, jmax: usize) -> Result<HarmonicUnits> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidCoupling(lambda));
    }
    if jmax > 3 {
        return Err(Error::OrderOutOfRange(jmax as u32));
    }
    let c = rs_coeffs(n).as_f64();
    // Horner in λ
    let sum = c[..=jmax].iter().rev().fold(0.0, |acc, &cj| acc * lambda + cj);
    Ok(HarmonicUnits(sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_coefficients() {
        let c = rs_coeffs(Level(0));
        assert_eq!(c.exact, [Q::new(1, 2), Q::new(3, 16), Q::new(-21, 128), Q::new(333, 1024)]);
    }

    #[test]
    fn first_excited() {
        let c = rs_coeffs(Level(1));
        assert_eq!(c.exact[0], Q::new(3, 2));
        assert_eq!(c.exact[1], Q::new(15, 16));
    }

    #[test]
    fn alternating_signs() {
        for n in 0..200 {
            let c = rs_coeffs(Level(n)).as_f64();
            assert_eq!(c[0], f64::from(n) + 0.5);
            assert!(c[1] > 0.0 && c[2] < 0.0 && c[3] > 0.0, "n = {n}");
        }
    }

    #[test]
    fn partial_sums() {
        assert_eq!(rs_partial_sum(Level(4), 0.0, 3).unwrap(), HarmonicUnits(4.5));
        let lambda: f64 = 0.01;
        let expected = 0.5 + 3.0 / 16.0 * lambda - 21.0 / 128.0 * lambda.powi(2) + 333.0 / 1024.0 * lambda.powi(3);
        let got = rs_partial_sum(Level(0), lambda, 3).unwrap().0;
        assert!((got - expected).abs() < 1e-15);
        // c2 λ² = (21/128)·1e-4, c3 λ³ = (333/1024)·1e-6
        assert!((expected - (0.5 + 0.001875 - 1.640625e-5 + 3.251953125e-7)).abs() < 1e-15);
    }

    #[test]
    fn truncation_difference_bound() {
        let lambda: f64 = 0.1;
        for n in 0..6 {
            let c = rs_coeffs(Level(n)).as_f64();
            let one = rs_partial_sum(Level(n), lambda, 1).unwrap().0;
            let three = rs_partial_sum(Level(n), lambda, 3).unwrap().0;
            assert!((three - one).abs() <= c[2].abs() * lambda.powi(2) + c[3].abs() * lambda.powi(3) + 1e-15);
        }
    }

    #[test]
    fn terms_grow_at_moderate_coupling() {
        let lambda: f64 = 0.5;
        let grows = (2..=5).any(|n| {
            let c = rs_coeffs(Level(n)).as_f64();
            (c[3] * lambda.powi(3)).abs() > (c[2] * lambda.powi(2)).abs()
        });
        assert!(grows);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rs_partial_sum(Level(0), -1.0, 3).is_err());
        assert!(rs_partial_sum(Level(0), 0.1, 4).is_err());
    }

    #[test]
    fn unit_conversion() {
        let m = OscillatorModel::with_g(4.0).unwrap();
        assert_eq!(HarmonicUnits(1.5).to_quartic_units(&m), 3.0);
    }
}
