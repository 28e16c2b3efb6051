//! Brute-force Rayleigh-Schrödinger sums for the squared-oscillator split.
//!
//! The perturbation `V = p²/2 + m²q²/2 − (1/Ω⁴)[Ω²(p²q² + q²p²)/4 + p⁴/4]` is
//! assembled by multiplying dense ladder-operator matrices, and the second
//! and third order energies are summed over intermediate states. Nothing here
//! shares code with the closed-form terms in [`crate::hs_terms`].

use crate::error::Result;
use crate::model::{check_regulator, Level};

/// Extra basis states kept beyond `n`. `V` couples `|n⟩` to `|n±2⟩` and
/// `|n±4⟩` only, so third order never reaches past `n + 8`.
pub const BASIS_MARGIN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSums {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub norm1: f64,
}

#[derive(Clone)]
struct Dense {
    n: usize,
    a: Vec<f64>,
}

impl Dense {
    fn zeros(n: usize) -> Self {
        Dense { n, a: vec![0.0; n * n] }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let s = self.at(i, k);
                if s == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += s * o.a[k * n + j];
                }
            }
        }
        out
    }

    fn scaled_sum(terms: &[(f64, &Dense)]) -> Dense {
        let n = terms[0].1.n;
        let mut out = Dense::zeros(n);
        for (c, m) in terms {
            for (o, v) in out.a.iter_mut().zip(&m.a) {
                *o += c * v;
            }
        }
        out
    }
}

/// Lowering operator `a` with `a|k⟩ = √k |k−1⟩`.
fn lowering(n: usize) -> Dense {
    let mut a = Dense::zeros(n);
    for k in 1..n {
        a.set(k - 1, k, (k as f64).sqrt());
    }
    a
}

fn transpose(m: &Dense) -> Dense {
    let mut t = Dense::zeros(m.n);
    for i in 0..m.n {
        for j in 0..m.n {
            t.set(j, i, m.at(i, j));
        }
    }
    t
}

/// Returns the first three corrections and the first-order norm for level
/// `n` at regulator `z` and shorthand `x = m²/Ω²`.
pub fn perturbation_sums(n: Level, z: f64, x: f64) -> Result<PerturbationSums> {
    check_regulator(z)?;
    let level = n.0 as usize;
    let size = level + BASIS_MARGIN;
    let big = size + 8;
    let omega = z.cbrt();
    let m_sq = x * omega * omega;

    let a = lowering(big);
    let ad = transpose(&a);
    let plus = Dense::scaled_sum(&[(1.0, &a), (1.0, &ad)]);
    // p = i√(Ω/2)(a† − a); only even powers of p appear, which are real.
    let minus = Dense::scaled_sum(&[(1.0, &ad), (-1.0, &a)]);
    let q2 = Dense::scaled_sum(&[(1.0 / (2.0 * omega), &plus.mul(&plus))]);
    let p2 = Dense::scaled_sum(&[(-omega / 2.0, &minus.mul(&minus))]);
    let p4 = p2.mul(&p2);
    let mixed = Dense::scaled_sum(&[(1.0, &p2.mul(&q2)), (1.0, &q2.mul(&p2))]);
    let om4 = omega.powi(4);
    let v_big = Dense::scaled_sum(&[
        (0.5, &p2),
        (0.5 * m_sq, &q2),
        (-(omega * omega) / (4.0 * om4), &mixed),
        (-1.0 / (4.0 * om4), &p4),
    ]);

    let v = |i: usize, j: usize| v_big.at(i, j);
    let energy = |k: usize| {
        let h = k as f64 + 0.5;
        h * h / (omega * omega)
    };
    let en = energy(level);
    // c_k = V_kn / (E_n − E_k), the first-order amplitudes
    let amp: Vec<f64> = (0..size)
        .map(|k| if k == level { 0.0 } else { v(k, level) / (en - energy(k)) })
        .collect();

    let e1 = v(level, level);
    let e2: f64 = (0..size).map(|k| v(level, k) * amp[k]).sum();
    let mut vv = 0.0;
    for k in 0..size {
        if amp[k] == 0.0 {
            continue;
        }
        for l in 0..size {
            vv += amp[k] * v(k, l) * amp[l];
        }
    }
    let norm1: f64 = amp.iter().map(|c| c * c).sum();
    Ok(PerturbationSums { e1, e2, e3: vv - e1 * norm1, norm1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_is_diagonal_element() {
        // E⁽¹⁾ at n=0, Z=1, X=0 is ¼ − 1/16 by direct ladder algebra
        let s = perturbation_sums(Level(0), 1.0, 0.0).unwrap();
        assert!((s.e1 - 0.1875).abs() < 1e-14);
        assert!(s.norm1 >= 0.0);
    }

    #[test]
    fn rejects_bad_regulator() {
        assert!(perturbation_sums(Level(0), 0.0, 0.0).is_err());
    }
}
