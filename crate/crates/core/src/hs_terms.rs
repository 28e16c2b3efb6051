//! Perturbative expansion of the quartic oscillator energies around a squared harmonic oscillator.
//!
//! With `Ω` the regulator frequency and `Z = (Ω/M)³`, the unperturbed
//! Hamiltonian `H₀ = (M³/Ω⁴)(p²/2 + Ω²q²/2)²` has the discrete spectrum
//! `E⁽⁰⁾ = Z^{-2/3}(n+½)²`. The corrections `E⁽¹⁾..E⁽³⁾` and the norm of the
//! first-order state are kept in grouped form so every additive
//! group can be checked against its vanishing conditions.
//!
//! All energies are in units of `M`.

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::model::{check_regulator, x_of, Level, OscillatorModel};

/// Highest perturbative order available.
pub const MAX_ORDER: u32 = 3;

/// Unperturbed energy and corrections at one `(n, Z, X)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermSet<S> {
    pub e0: S,
    pub e1: S,
    pub e2: S,
    pub e3: S,
    /// `⟨n⁽¹⁾|n⁽¹⁾⟩`
    pub norm1: S,
}

impl<S: Scalar> TermSet<S> {
    pub fn partial_sum(&self, k: u32) -> S {
        let mut s = self.e0;
        if k >= 1 {
            s = s + self.e1;
        }
        if k >= 2 {
            s = s + self.e2;
        }
        if k >= 3 {
            s = s + self.e3;
        }
        s
    }

    /// `E⁽¹⁾ + … + E⁽ᵏ⁾`.
    pub fn corrections(&self, k: u32) -> S {
        self.partial_sum(k) - self.e0
    }

    /// `⟨H⟩⁽⁰⁾ = E⁽⁰⁾ + E⁽¹⁾`.
    pub fn h_expect_0(&self) -> S {
        self.e0 + self.e1
    }

    /// `⟨H⟩⁽¹⁾ = E⁽⁰⁾ + E⁽¹⁾ + (E⁽²⁾ + E⁽³⁾)/(1 + ⟨n⁽¹⁾|n⁽¹⁾⟩)`.
    pub fn h_expect_1(&self) -> S {
        self.e0 + self.e1 + (self.e2 + self.e3) / (self.norm1 + 1.0)
    }
}

/// Public snapshot of the expansion at a regulator value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsTermValues {
    pub n: Level,
    pub z: f64,
    pub x: f64,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub norm1: f64,
}

fn prefactor<S: Scalar>(z: S) -> S {
    z.powf(-2.0 / 3.0)
}

fn unperturbed<S: Scalar>(n: u32, z: S) -> S {
    let h = f64::from(n) + 0.5;
    prefactor(z) * (h * h)
}

/// `(2n+1)/4 · Z(1+X) − (10n²+10n+1)/16`, without the `Z^{-2/3}` factor.
fn first_bracket<S: Scalar>(nf: f64, p: S) -> S {
    p * ((2.0 * nf + 1.0) / 4.0) - (10.0 * nf * nf + 10.0 * nf + 1.0) / 16.0
}

fn second_groups<S: Scalar>(n: u32, z: S, x: S) -> [S; 3] {
    let nf = f64::from(n);
    let y = z * (-x + 1.0);
    let c0 = 3.0 * (nf.powi(4) + 2.0 * nf.powi(3) - 2.0 * nf * nf - 3.0 * nf - 3.0)
        / (128.0 * (2.0 * nf - 3.0) * (2.0 * nf + 5.0));
    let lower = nf * (nf - 1.0) / (32.0 * (2.0 * nf - 1.0));
    let upper = (nf + 1.0) * (nf + 2.0) / (32.0 * (2.0 * nf + 3.0));
    let dl = y - (2.0 * nf - 1.0) / 2.0;
    let du = y - (2.0 * nf + 3.0) / 2.0;
    [S::constant(c0), -(dl * dl) * lower, du * du * upper]
}

/// Squared first-order amplitudes onto `|n±2⟩` and `|n±4⟩`.
fn norm_groups<S: Scalar>(n: u32, z: S, x: S) -> [S; 4] {
    let nf = f64::from(n);
    let w = z * (-x + 1.0) / 4.0;
    let up2 = w - (2.0 * nf + 3.0) / 8.0;
    let dn2 = w - (2.0 * nf - 1.0) / 8.0;
    [
        up2 * up2 * ((nf + 1.0) * (nf + 2.0) / (4.0 * (2.0 * nf + 3.0).powi(2))),
        S::constant(
            (nf + 1.0) * (nf + 2.0) * (nf + 3.0) * (nf + 4.0) / (4096.0 * (2.0 * nf + 5.0).powi(2)),
        ),
        dn2 * dn2 * (nf * (nf - 1.0) / (4.0 * (2.0 * nf - 1.0).powi(2))),
        S::constant(
            nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0) / (4096.0 * (2.0 * nf - 3.0).powi(2)),
        ),
    ]
}

fn third_groups<S: Scalar>(n: u32, z: S, x: S) -> [S; 8] {
    let nf = f64::from(n);
    let w = z * (-x + 1.0) / 4.0;
    let p = z * (x + 1.0);
    let [a, c, b, d] = norm_groups(n, z, x);

    let g1 = a * (p * ((2.0 * nf + 5.0) / 4.0) - (10.0 * nf * nf + 50.0 * nf + 61.0) / 16.0);
    let g2 = b * (p * ((2.0 * nf - 3.0) / 4.0) - (10.0 * nf * nf - 30.0 * nf + 21.0) / 16.0);
    let g3 = (w - (2.0 * nf + 3.0) / 8.0)
        * (w - (2.0 * nf + 7.0) / 8.0)
        * ((nf + 1.0) * (nf + 2.0) * (nf + 3.0) * (nf + 4.0)
            / (64.0 * (2.0 * nf + 5.0) * (2.0 * nf + 3.0)));
    let g4 = -(w - (2.0 * nf - 1.0) / 8.0)
        * (w - (2.0 * nf + 3.0) / 8.0)
        * (nf * (nf - 1.0) * (nf + 1.0) * (nf + 2.0)
            / (32.0 * (2.0 * nf + 3.0) * (2.0 * nf - 1.0)));
    let g5 = (w - (2.0 * nf - 5.0) / 8.0)
        * (w - (2.0 * nf - 1.0) / 8.0)
        * (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0)
            / (64.0 * (2.0 * nf - 1.0) * (2.0 * nf - 3.0)));
    let g6 = c * (p * ((2.0 * nf + 9.0) / 4.0) - (10.0 * nf * nf + 90.0 * nf + 201.0) / 16.0);
    let g7 = d * (p * ((2.0 * nf - 7.0) / 4.0) - (10.0 * nf * nf - 70.0 * nf + 121.0) / 16.0);
    let g8 = -(a + c + b + d) * first_bracket(nf, p);
    [g1, g2, g3, g4, g5, g6, g7, g8]
}

/// Evaluates every quantity of the expansion at `(n, Z, X)`.
pub fn terms_generic<S: Scalar>(n: u32, z: S, x: S) -> TermSet<S> {
    let nf = f64::from(n);
    let pre = prefactor(z);
    let p = z * (x + 1.0);
    let sum = |gs: &[S]| gs.iter().fold(S::constant(0.0), |acc, &g| acc + g);
    TermSet {
        e0: unperturbed(n, z),
        e1: pre * first_bracket(nf, p),
        e2: -(pre * sum(&second_groups(n, z, x))),
        e3: pre * sum(&third_groups(n, z, x)),
        norm1: sum(&norm_groups(n, z, x)),
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidCoupling(x))
    }
}

fn check_order(k: u32) -> Result<()> {
    if k <= MAX_ORDER {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(k))
    }
}

pub fn e0(n: Level, z: f64) -> Result<f64> {
    check_regulator(z)?;
    Ok(unperturbed(n.0, z))
}

pub fn e1(n: Level, z: f64, x: f64) -> Result<f64> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(terms_generic(n.0, z, x).e1)
}

pub fn e2(n: Level, z: f64, x: f64) -> Result<f64> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(terms_generic(n.0, z, x).e2)
}

pub fn e3(n: Level, z: f64, x: f64) -> Result<f64> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(terms_generic(n.0, z, x).e3)
}

pub fn first_order_norm(n: Level, z: f64, x: f64) -> Result<f64> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(terms_generic(n.0, z, x).norm1)
}

/// The three bracketed groups of `E⁽²⁾` with their signs;
/// `E⁽²⁾ = −Z^{-2/3} Σ groups`.
pub fn e2_groups(n: Level, z: f64, x: f64) -> Result<[f64; 3]> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(second_groups(n.0, z, x))
}

/// The eight additive groups of `E⁽³⁾`, the braced subtraction last;
/// `E⁽³⁾ = Z^{-2/3} Σ groups`.
pub fn e3_groups(n: Level, z: f64, x: f64) -> Result<[f64; 8]> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(third_groups(n.0, z, x))
}

/// The four groups of `⟨n⁽¹⁾|n⁽¹⁾⟩`.
pub fn norm_groups_at(n: Level, z: f64, x: f64) -> Result<[f64; 4]> {
    check_regulator(z)?;
    check_x(x)?;
    Ok(norm_groups(n.0, z, x))
}

pub fn term_values(n: Level, z: f64, model: &OscillatorModel) -> Result<HsTermValues> {
    let x = x_of(z, model)?;
    let t = terms_generic(n.0, z, x);
    Ok(HsTermValues {
        n,
        z,
        x,
        e0: t.e0,
        e1: t.e1,
        e2: t.e2,
        e3: t.e3,
        norm1: t.norm1,
    })
}

/// `Σ_{j=0}^{k} E⁽ʲ⁾` with `X` derived from the model.
pub fn partial_sum(n: Level, z: f64, model: &OscillatorModel, k: u32) -> Result<f64> {
    check_order(k)?;
    let x = x_of(z, model)?;
    Ok(terms_generic(n.0, z, x).partial_sum(k))
}

pub fn h_expect_0(n: Level, z: f64, model: &OscillatorModel) -> Result<f64> {
    let x = x_of(z, model)?;
    Ok(terms_generic(n.0, z, x).h_expect_0())
}

pub fn h_expect_1(n: Level, z: f64, model: &OscillatorModel) -> Result<f64> {
    let x = x_of(z, model)?;
    Ok(terms_generic(n.0, z, x).h_expect_1())
}

/// A function of `Z` built from the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    /// `Σ_{j=0}^{k} E⁽ʲ⁾`
    PartialSum(u32),
    /// `Σ_{j=1}^{k} E⁽ʲ⁾`
    Corrections(u32),
    HExpect0,
    HExpect1,
}

impl Curve {
    pub fn validate(self) -> Result<Self> {
        match self {
            Curve::PartialSum(k) | Curve::Corrections(k) => check_order(k).map(|_| self),
            _ => Ok(self),
        }
    }

    pub fn combine<S: Scalar>(self, t: &TermSet<S>) -> S {
        match self {
            Curve::PartialSum(k) => t.partial_sum(k),
            Curve::Corrections(k) => t.corrections(k),
            Curve::HExpect0 => t.h_expect_0(),
            Curve::HExpect1 => t.h_expect_1(),
        }
    }

    /// Short tag used in tabular output.
    pub fn tag(self) -> String {
        match self {
            Curve::PartialSum(k) => format!("k{k}"),
            Curve::Corrections(k) => format!("c{k}"),
            Curve::HExpect0 => "h0".to_string(),
            Curve::HExpect1 => "h1".to_string(),
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "h0" => Some(Curve::HExpect0),
            "h1" => Some(Curve::HExpect1),
            _ => {
                let (kind, k) = tag.split_at(1.min(tag.len()));
                let k: u32 = k.parse().ok().filter(|&k| k <= MAX_ORDER)?;
                match kind {
                    "k" => Some(Curve::PartialSum(k)),
                    "c" => Some(Curve::Corrections(k)),
                    _ => None,
                }
            }
        }
    }
}

/// Supplies the expansion terms to the selection procedures.
///
/// [`ClosedFormTerms`] is the only production implementation; the trait exists
/// so the acceptance report can be run against a deliberately broken source.
pub trait TermSource: Sync {
    fn terms(&self, n: Level, z: Dual, x: Dual) -> TermSet<Dual>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormTerms;

impl TermSource for ClosedFormTerms {
    fn terms(&self, n: Level, z: Dual, x: Dual) -> TermSet<Dual> {
        terms_generic(n.0, z, x)
    }
}

/// Value and `d/dZ` of a curve. `X = g Z^{-2/3}` is differentiated along
/// with `Z`.
pub fn curve_with_derivative(
    source: &dyn TermSource,
    curve: Curve,
    n: Level,
    z: f64,
    model: &OscillatorModel,
) -> Result<Dual> {
    check_regulator(z)?;
    let zd = Dual::variable(z);
    let xd = zd.powf(-2.0 / 3.0) * model.g();
    Ok(curve.combine(&source.terms(n, zd, xd)))
}

/// Coefficients of an order-`k` partial sum as a polynomial in `X` at fixed `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct XPolynomial {
    pub n: Level,
    pub z: f64,
    pub order: u32,
    /// `p_0 .. p_k`, lowest power first.
    pub coeffs: Vec<f64>,
}

impl XPolynomial {
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Interpolates the partial sum at `X = 0, 1, …, k` and converts the Newton
/// form to monomial coefficients. The partial sum is exactly a polynomial of
/// degree `k` in `X`, so the interpolant is the polynomial itself.
pub fn x_polynomial(n: Level, z: f64, k: u32) -> Result<XPolynomial> {
    check_regulator(z)?;
    check_order(k)?;
    let nodes: Vec<f64> = (0..=k).map(f64::from).collect();
    let mut dd: Vec<f64> = nodes
        .iter()
        .map(|&x| terms_generic(n.0, z, x).partial_sum(k))
        .collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form into monomials.
    let mut coeffs = vec![0.0; dd.len()];
    for i in (0..dd.len()).rev() {
        for j in (1..coeffs.len()).rev() {
            coeffs[j] = coeffs[j - 1] - nodes[i] * coeffs[j];
        }
        coeffs[0] = dd[i] - nodes[i] * coeffs[0];
    }
    Ok(XPolynomial { n, z, order: k, coeffs })
}
