//! Scalar root bracketing, bisection, golden-section search and real cubic
//! roots.

/// Maximum bisection / golden-section steps; far more than 1e-10 relative
/// precision needs on any bracket inside f64 range.
const MAX_STEPS: usize = 400;

/// Brackets `[z_i, z_{i+1}]` across which `values` changes sign. A value that
/// is exactly zero yields the degenerate bracket `(z_i, z_i)`.
pub fn sign_change_brackets(grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    assert_eq!(grid.len(), values.len());
    let mut out = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            out.push((grid[i], grid[i]));
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            out.push((grid[i], grid[i + 1]));
        }
    }
    out
}

/// Bisection on a sign-changing bracket until `hi − lo ≤ rel_tol · |mid|`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..MAX_STEPS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid.abs() || mid == lo || mid == hi {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`. Returns the
/// abscissa and value of the best point found.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_STEPS {
        if hi - lo <= rel_tol * (0.5 * (lo + hi)).abs() {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Real roots of `t³ + p t + q = 0`, ascending.
pub fn depressed_cubic_real_roots(p: f64, q: f64) -> Vec<f64> {
    if p == 0.0 {
        return vec![(-q).cbrt()];
    }
    let disc = q * q / 4.0 + p * p * p / 27.0;
    if disc > 0.0 {
        let s = disc.sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt()]
    } else {
        // three real roots (p < 0)
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut roots: Vec<f64> = (0..3)
            .map(|k| r * (phi - 2.0 * std::f64::consts::PI * f64::from(k) / 3.0).cos())
            .collect();
        roots.sort_by(f64::total_cmp);
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 1.0, 2.0, 1e-12);
        assert!((r - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn brackets_found() {
        let grid: Vec<f64> = (0..=40).map(|i| f64::from(i) * 0.25).collect();
        let vals: Vec<f64> = grid.iter().map(|&x| (x - 1.1) * (x - 3.3) * (x - 7.9)).collect();
        let b = sign_change_brackets(&grid, &vals);
        assert_eq!(b.len(), 3);
        assert!(b[0].0 <= 1.1 && 1.1 <= b[0].1);
    }

    #[test]
    fn exact_zero_on_grid() {
        let grid = [0.0, 1.0, 2.0];
        let vals = [-1.0, 0.0, 1.0];
        assert_eq!(sign_change_brackets(&grid, &vals), vec![(1.0, 1.0)]);
    }

    #[test]
    fn golden_section_parabola() {
        let (x, fx) = golden_section_min(|x| (x - 0.7) * (x - 0.7) + 2.0, 0.0, 3.0, 1e-10);
        assert!((x - 0.7).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_roots() {
        // (t-1)(t-2)(t+3) = t³ - 7t + 6
        let r = depressed_cubic_real_roots(-7.0, 6.0);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // t³ + t - 2 = (t-1)(t²+t+2)
        let r = depressed_cubic_real_roots(1.0, -2.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
        let r = depressed_cubic_real_roots(0.0, -8.0);
        assert!((r[0] - 2.0).abs() < 1e-15);
    }
}
