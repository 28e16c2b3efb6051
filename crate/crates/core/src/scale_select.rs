//! Choosing the regulator `Z` for a truncated expansion.
//!
//! Three procedures are provided:
//!
//! * fastest apparent convergence (FAC): the corrections `E⁽¹⁾ + … + E⁽ᵏ⁾`
//!   vanish; the smallest root is taken.
//! * minimum sensitivity (PMS): the order-`k` partial sum is stationary in
//!   `Z`; the left-most local minimum is taken.
//! * the perturbative-variational method: `⟨H⟩⁽⁰⁾` or `⟨H⟩⁽¹⁾` is minimized;
//!   the global minimum for `n ≤ 1`, otherwise the left-most local minimum.
//!
//! Candidates are located by scanning a grid for sign changes and refining
//! each bracket by bisection. Derivatives in `Z` are exact (dual numbers).

use crate::error::{Error, Result};
use crate::hs_terms::{curve_with_derivative, Curve, ClosedFormTerms, TermSource, MAX_ORDER};
use crate::model::{Level, OscillatorModel};
use crate::roots::{bisect, depressed_cubic_real_roots, sign_change_brackets};

/// Relative precision of every refined root or stationary point.
pub const Z_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZSearchWindow {
    pub z_min: f64,
    pub z_max: f64,
    pub samples: usize,
    pub spacing: Spacing,
}

impl ZSearchWindow {
    pub fn new(z_min: f64, z_max: f64, samples: usize, spacing: Spacing) -> Result<Self> {
        if !(z_min > 0.0 && z_max > z_min && z_max.is_finite()) || samples < 2 {
            return Err(Error::InvalidWindow { z_min, z_max, samples });
        }
        Ok(Self { z_min, z_max, samples, spacing })
    }

    /// At `g = 0`: `[0.02, 10(n+1)]`, 2000 uniform samples, which covers every
    /// feature near `Z ∼ n+1`. For `g > 0` the upper end grows by
    /// `1 + g^{3/2}` (the stationary point moves out like `g^{3/2}`), the
    /// lower end shrinks by `(1+g)^4`, and the samples are log-spaced.
    pub fn default_for(n: Level, model: &OscillatorModel) -> Self {
        let g = model.g();
        let z_max = 10.0 * (n.as_f64() + 1.0) * (1.0 + g.powf(1.5));
        if g == 0.0 {
            return Self { z_min: 0.02, z_max, samples: 2000, spacing: Spacing::Uniform };
        }
        // the first-order FAC root falls off like g^{-3}
        let z_min = 0.02 / (1.0 + g).powi(4);
        Self { z_min, z_max, samples: 2000, spacing: Spacing::Logarithmic }
    }

    /// `[0.02, 50(n+1)³(1 + g^{3/2})]`, 4000 log-spaced samples. Needed to
    /// reach the far right minimum of the third-order sum, which for pure
    /// quartic states `n = 2..5` sits near `Z ≈ 100, 333, 762, 1441`.
    pub fn extended(n: Level, model: &OscillatorModel) -> Self {
        let z_max = 50.0 * (n.as_f64() + 1.0).powi(3) * (1.0 + model.g().powf(1.5));
        Self { z_min: 0.02, z_max, samples: 4000, spacing: Spacing::Logarithmic }
    }

    pub fn grid(&self) -> Vec<f64> {
        let last = (self.samples - 1) as f64;
        let mut g: Vec<f64> = match self.spacing {
            Spacing::Uniform => (0..self.samples)
                .map(|i| self.z_min + (self.z_max - self.z_min) * i as f64 / last)
                .collect(),
            Spacing::Logarithmic => {
                let ratio = (self.z_max / self.z_min).ln();
                (0..self.samples)
                    .map(|i| self.z_min * (ratio * i as f64 / last).exp())
                    .collect()
            }
        };
        g[self.samples - 1] = self.z_max;
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fac,
    Pms,
    Var0,
    Var1,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fac => "fac",
            Method::Pms => "pms",
            Method::Var0 => "var0",
            Method::Var1 => "var1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    LocalMin,
    LocalMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub z: f64,
    pub value: f64,
    /// From the sign change of the derivative across the bracket.
    pub kind: StationaryKind,
    /// From a central difference of the derivative at `z`.
    pub curvature_sign: CurvatureSign,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Candidates {
    Roots(Vec<f64>),
    Stationary(Vec<StationaryPoint>),
}

impl Candidates {
    pub fn z_values(&self) -> Vec<f64> {
        match self {
            Candidates::Roots(r) => r.clone(),
            Candidates::Stationary(s) => s.iter().map(|p| p.z).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    SmallestRoot,
    UniqueStationaryPoint,
    LeftLocalMinimum,
    GlobalMinimum,
}

impl SelectionRule {
    pub fn name(self) -> &'static str {
        match self {
            SelectionRule::SmallestRoot => "smallest-root",
            SelectionRule::UniqueStationaryPoint => "unique-stationary-point",
            SelectionRule::LeftLocalMinimum => "left-local-minimum",
            SelectionRule::GlobalMinimum => "global-minimum",
        }
    }
}

/// Range of an objective between its two outermost local minima.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub z_left: f64,
    pub z_right: f64,
    pub min: f64,
    pub max: f64,
}

impl Spread {
    pub fn value(&self) -> f64 {
        self.max - self.min
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpreadObjective {
    K3PartialSum,
    HExpect1,
}

impl SpreadObjective {
    fn curve(self) -> Curve {
        match self {
            SpreadObjective::K3PartialSum => Curve::PartialSum(3),
            SpreadObjective::HExpect1 => Curve::HExpect1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub method: Method,
    /// Perturbative order `k` for FAC/PMS, the variational level otherwise.
    pub order: u32,
    pub n: Level,
    pub z_chosen: f64,
    pub candidates: Candidates,
    /// Energy estimate in units of `M`.
    pub energy: f64,
    pub rule_applied: SelectionRule,
    /// Closed-form first-order `Z`, when one exists.
    pub closed_form_z: Option<f64>,
    /// Min-to-min spread, reported by the variational method for `n ≥ 2`.
    pub spread: Option<Spread>,
}

/// Runs the selection procedures against a [`TermSource`].
#[derive(Clone, Copy)]
pub struct Selector<'a> {
    source: &'a dyn TermSource,
}

impl Selector<'static> {
    pub fn closed_form() -> Self {
        Selector { source: &ClosedFormTerms }
    }
}

impl<'a> Selector<'a> {
    pub fn new(source: &'a dyn TermSource) -> Self {
        Selector { source }
    }

    pub fn value(&self, curve: Curve, n: Level, z: f64, model: &OscillatorModel) -> Result<f64> {
        Ok(curve_with_derivative(self.source, curve.validate()?, n, z, model)?.v)
    }

    pub fn derivative(&self, curve: Curve, n: Level, z: f64, model: &OscillatorModel) -> Result<f64> {
        Ok(curve_with_derivative(self.source, curve.validate()?, n, z, model)?.d)
    }

    fn eval(&self, curve: Curve, n: Level, z: f64, model: &OscillatorModel) -> (f64, f64) {
        // callers have validated z > 0 and the curve
        let d = curve_with_derivative(self.source, curve, n, z, model)
            .expect("validated regulator");
        (d.v, d.d)
    }

    /// All sign changes of `curve` in the window, refined by bisection.
    pub fn roots(&self, curve: Curve, n: Level, model: &OscillatorModel, window: &ZSearchWindow) -> Result<Vec<f64>> {
        let curve = curve.validate()?;
        let grid = window.grid();
        let values: Vec<f64> = grid.iter().map(|&z| self.eval(curve, n, z, model).0).collect();
        Ok(sign_change_brackets(&grid, &values)
            .into_iter()
            .map(|(lo, hi)| bisect(|z| self.eval(curve, n, z, model).0, lo, hi, Z_REL_TOL))
            .collect())
    }

    /// All stationary points of `curve` in the window, ordered by `z`.
    pub fn stationary_points(
        &self,
        curve: Curve,
        n: Level,
        model: &OscillatorModel,
        window: &ZSearchWindow,
    ) -> Result<Vec<StationaryPoint>> {
        let curve = curve.validate()?;
        let grid = window.grid();
        let slopes: Vec<f64> = grid.iter().map(|&z| self.eval(curve, n, z, model).1).collect();
        let slope = |z: f64| self.eval(curve, n, z, model).1;
        let mut out = Vec::new();
        for (lo, hi) in sign_change_brackets(&grid, &slopes) {
            let z = bisect(slope, lo, hi, Z_REL_TOL);
            let h = 1e-5 * z;
            let curvature = (slope(z + h) - slope(z - h)) / (2.0 * h);
            let curvature_sign = if curvature >= 0.0 { CurvatureSign::Positive } else { CurvatureSign::Negative };
            let kind = if lo < hi {
                if slope(lo) < 0.0 {
                    StationaryKind::LocalMin
                } else {
                    StationaryKind::LocalMax
                }
            } else if curvature >= 0.0 {
                StationaryKind::LocalMin
            } else {
                StationaryKind::LocalMax
            };
            out.push(StationaryPoint { z, value: self.eval(curve, n, z, model).0, kind, curvature_sign });
        }
        Ok(out)
    }

    pub fn fac(&self, n: Level, model: &OscillatorModel, k: u32, window: &ZSearchWindow) -> Result<SelectionResult> {
        check_selection_order(k)?;
        let roots = self.roots(Curve::Corrections(k), n, model, window)?;
        let z = *roots
            .iter()
            .find(|&&z| z > 0.0)
            .ok_or(Error::NoRoot { z_min: window.z_min, z_max: window.z_max })?;
        Ok(SelectionResult {
            method: Method::Fac,
            order: k,
            n,
            z_chosen: z,
            energy: self.value(Curve::PartialSum(0), n, z, model)?,
            candidates: Candidates::Roots(roots),
            rule_applied: SelectionRule::SmallestRoot,
            closed_form_z: (k == 1).then(|| fac_closed_form_z(n, model.g())),
            spread: None,
        })
    }

    pub fn pms(&self, n: Level, model: &OscillatorModel, k: u32, window: &ZSearchWindow) -> Result<SelectionResult> {
        check_selection_order(k)?;
        let curve = Curve::PartialSum(k);
        let points = self.stationary_points(curve, n, model, window)?;
        if points.is_empty() {
            return Err(Error::NoStationaryPoint { z_min: window.z_min, z_max: window.z_max });
        }
        let (chosen, rule) = if k == 1 && points.len() == 1 {
            (points[0], SelectionRule::UniqueStationaryPoint)
        } else {
            let left = points
                .iter()
                .find(|p| p.kind == StationaryKind::LocalMin)
                .ok_or(Error::NoLocalMinimum { z_min: window.z_min, z_max: window.z_max })?;
            (*left, SelectionRule::LeftLocalMinimum)
        };
        Ok(SelectionResult {
            method: Method::Pms,
            order: k,
            n,
            z_chosen: chosen.z,
            energy: chosen.value,
            candidates: Candidates::Stationary(points),
            rule_applied: rule,
            closed_form_z: (k == 1).then(|| pms_closed_form_z(n, model.g())),
            spread: None,
        })
    }

    /// `level = 0` minimizes `⟨H⟩⁽⁰⁾`, `level = 1` minimizes `⟨H⟩⁽¹⁾`.
    pub fn variational(
        &self,
        n: Level,
        model: &OscillatorModel,
        level: u32,
        window: &ZSearchWindow,
    ) -> Result<SelectionResult> {
        let (curve, method) = match level {
            0 => (Curve::HExpect0, Method::Var0),
            1 => (Curve::HExpect1, Method::Var1),
            other => return Err(Error::OrderOutOfRange(other)),
        };
        let points = self.stationary_points(curve, n, model, window)?;
        let minima: Vec<StationaryPoint> =
            points.iter().copied().filter(|p| p.kind == StationaryKind::LocalMin).collect();
        if minima.is_empty() {
            return Err(Error::NoLocalMinimum { z_min: window.z_min, z_max: window.z_max });
        }
        let (chosen, rule) = if n.0 <= 1 {
            let best = minima
                .iter()
                .copied()
                .min_by(|a, b| a.value.total_cmp(&b.value))
                .expect("non-empty");
            (best, SelectionRule::GlobalMinimum)
        } else {
            (minima[0], SelectionRule::LeftLocalMinimum)
        };
        let spread = if n.0 >= 2 && minima.len() >= 2 { Some(spread_of(&points)) } else { None };
        Ok(SelectionResult {
            method,
            order: level,
            n,
            z_chosen: chosen.z,
            energy: chosen.value,
            candidates: Candidates::Stationary(points),
            rule_applied: rule,
            closed_form_z: (level == 0).then(|| pms_closed_form_z(n, model.g())),
            spread,
        })
    }

    pub fn spread(
        &self,
        n: Level,
        model: &OscillatorModel,
        objective: SpreadObjective,
        window: &ZSearchWindow,
    ) -> Result<Spread> {
        let points = self.stationary_points(objective.curve(), n, model, window)?;
        let minima = points.iter().filter(|p| p.kind == StationaryKind::LocalMin).count();
        if minima < 2 {
            return Err(Error::TooFewMinima { found: minima });
        }
        Ok(spread_of(&points))
    }
}

/// Between the outermost minima the extrema of a smooth curve are its
/// stationary points, so max and min come straight from the candidate list.
fn spread_of(points: &[StationaryPoint]) -> Spread {
    let minima: Vec<&StationaryPoint> = points.iter().filter(|p| p.kind == StationaryKind::LocalMin).collect();
    let (left, right) = (minima[0], minima[minima.len() - 1]);
    let inside = points.iter().filter(|p| p.z >= left.z && p.z <= right.z);
    let (min, max) = inside.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        (lo.min(p.value), hi.max(p.value))
    });
    Spread { z_left: left.z, z_right: right.z, min, max }
}

fn check_selection_order(k: u32) -> Result<()> {
    if (1..=MAX_ORDER).contains(&k) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(k))
    }
}

pub fn fac_select(n: Level, model: &OscillatorModel, k: u32, window: &ZSearchWindow) -> Result<SelectionResult> {
    Selector::closed_form().fac(n, model, k, window)
}

pub fn pms_select(n: Level, model: &OscillatorModel, k: u32, window: &ZSearchWindow) -> Result<SelectionResult> {
    Selector::closed_form().pms(n, model, k, window)
}

pub fn variational_select(
    n: Level,
    model: &OscillatorModel,
    level: u32,
    window: &ZSearchWindow,
) -> Result<SelectionResult> {
    Selector::closed_form().variational(n, model, level, window)
}

pub fn spread(n: Level, model: &OscillatorModel, objective: SpreadObjective, window: &ZSearchWindow) -> Result<Spread> {
    Selector::closed_form().spread(n, model, objective, window)
}

/// `C(n) = 5(n²+n+1/10) / (4(n+½))`
fn fac_constant(n: Level) -> f64 {
    let nf = n.as_f64();
    5.0 * (nf * nf + nf + 0.1) / (4.0 * (nf + 0.5))
}

/// `C'(n) = 3(n²+n+½) / (2(n+½))`
fn pms_constant(n: Level) -> f64 {
    let nf = n.as_f64();
    3.0 * (nf * nf + nf + 0.5) / (2.0 * (nf + 0.5))
}

/// Real root of `Z + g Z^{1/3} = C(n)`, solved as a cubic in `u = Z^{1/3}`.
pub fn fac_closed_form_z(n: Level, g: f64) -> f64 {
    let u = depressed_cubic_real_roots(g, -fac_constant(n))
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    u.powi(3)
}

/// Positive root of `Z − g Z^{1/3} = C'(n)` as a cubic in `u = Z^{1/3}`.
pub fn pms_closed_form_z(n: Level, g: f64) -> f64 {
    let u = depressed_cubic_real_roots(-g, -pms_constant(n))
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    u.powi(3)
}

/// `(4/5)^{2/3} [(n+½)⁴ / (n²+n+1/10)]^{2/3}`, the pure quartic FAC energy.
pub fn fac_closed_form_energy(n: Level) -> f64 {
    let nf = n.as_f64();
    (0.8f64).powf(2.0 / 3.0) * ((nf + 0.5).powi(4) / (nf * nf + nf + 0.1)).powf(2.0 / 3.0)
}

/// `3^{4/3}/2^{7/3} [(n+½)²(n²+n+½)]^{1/3}`, the pure quartic PMS energy.
pub fn pms_closed_form_energy(n: Level) -> f64 {
    let nf = n.as_f64();
    pms_asymptotic_constant() * ((nf + 0.5).powi(2) * (nf * nf + nf + 0.5)).cbrt()
}

pub fn fac_asymptotic_constant() -> f64 {
    (0.8f64).powf(2.0 / 3.0)
}

pub fn pms_asymptotic_constant() -> f64 {
    3f64.powf(4.0 / 3.0) / 2f64.powf(7.0 / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport {
    pub n: Level,
    pub fac_constant: f64,
    pub pms_constant: f64,
    /// `E_FAC(n) / (const · (n+½)^{4/3})`
    pub fac_energy_ratio: f64,
    pub pms_energy_ratio: f64,
    /// `Z_FAC(n) / ((5/4)(n+½))`
    pub fac_z_ratio: f64,
    /// `Z_PMS(n) / ((3/2)(n+½))`
    pub pms_z_ratio: f64,
}

pub fn asymptotic_checks_at(n: Level) -> AsymptoticReport {
    let h = n.as_f64() + 0.5;
    let scale = h.powf(4.0 / 3.0);
    AsymptoticReport {
        n,
        fac_constant: fac_asymptotic_constant(),
        pms_constant: pms_asymptotic_constant(),
        fac_energy_ratio: fac_closed_form_energy(n) / (fac_asymptotic_constant() * scale),
        pms_energy_ratio: pms_closed_form_energy(n) / (pms_asymptotic_constant() * scale),
        fac_z_ratio: fac_closed_form_z(n, 0.0) / (1.25 * h),
        pms_z_ratio: pms_closed_form_z(n, 0.0) / (1.5 * h),
    }
}

/// The large-`n` checks at `n = 1000`.
pub fn asymptotic_checks() -> AsymptoticReport {
    asymptotic_checks_at(Level(1000))
}
