//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL.

use super::banded::BandedSymmetric;
use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Reduces the symmetric row-major matrix `a` (only the lower triangle is
/// read) to tridiagonal form. Returns the diagonal and the sub-diagonal, where
/// `e[i]` couples rows `i-1` and `i` and `e[0] = 0`. `a` is overwritten.
pub fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i * n + i];
    }
    e[0] = 0.0;
    (d, e)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL,
/// sorted ascending. `e` uses the layout returned by [`tridiagonalize`].
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    e.rotate_left(1);
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::EigenNoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// All eigenvalues of a dense symmetric matrix, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let (d, e) = tridiagonalize(&mut a, n);
    tridiagonal_eigenvalues(d, e)
}

/// The lowest `count` eigenvalues, ascending. Parity-conserving matrices are
/// split into their even and odd blocks first.
pub fn eigen_lowest(h: &BandedSymmetric, count: usize) -> Result<Vec<f64>> {
    let dim = h.dim();
    if count > dim {
        return Err(Error::TooManyEigenvalues { count, dim });
    }
    let mut all = if h.conserves_parity() && dim >= 2 {
        let (ne, even) = h.parity_block(0);
        let (no, odd) = h.parity_block(1);
        let mut v = symmetric_eigenvalues(even, ne)?;
        v.extend(symmetric_eigenvalues(odd, no)?);
        v.sort_by(f64::total_cmp);
        v
    } else {
        symmetric_eigenvalues(h.to_dense(), dim)?
    };
    all.truncate(count);
    Ok(all)
}

/// Eigenvalues of each parity block separately, `(even, odd)`.
pub fn parity_spectra(h: &BandedSymmetric) -> Result<(Vec<f64>, Vec<f64>)> {
    let (ne, even) = h.parity_block(0);
    let (no, odd) = h.parity_block(1);
    Ok((symmetric_eigenvalues(even, ne)?, symmetric_eigenvalues(odd, no)?))
}
