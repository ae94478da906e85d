//! Bracketing one-dimensional solvers shared by the region and gamma modules.

use crate::error::{Error, Result};

/// Bisection to floating-point resolution of the bracket.
///
/// Requires f(lo) and f(hi) of opposite (nonzero) sign. Returns the midpoint
/// of the final bracket. The caller checks any residual criterion itself.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::BracketSignFailure {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let mut sign_a = fa.signum();
    for _ in 0..max_iter {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break; // bracket at floating-point resolution
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sign_a {
            a = mid;
            sign_a = fm.signum();
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section minimization on [a, b] down to abscissa tolerance `tol`.
/// Returns (minimizer, value). The bracket must contain a single local
/// minimum for the result to be the global one.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if c >= d {
            break; // interval collapsed to fp resolution
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Expands `hi` geometrically from `start` towards `limit` until f(hi) has
/// the requested sign, then returns the bracket end. Used where a function
/// has a known sign near a degenerate endpoint that floating point cannot
/// resolve at the endpoint itself.
pub fn walk_to_sign<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    limit: f64,
    want_negative: bool,
    max_steps: usize,
) -> Option<f64> {
    let mut x = start;
    for _ in 0..max_steps {
        let v = f(x);
        if (want_negative && v < 0.0) || (!want_negative && v > 0.0) {
            return Some(x);
        }
        x = limit + (x - limit) * 2.0;
        if (limit < start && x >= start) || (limit > start && x <= start) {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 200).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn bisect_rejects_same_sign_bracket() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 50),
            Err(Error::BracketSignFailure { .. })
        ));
    }

    #[test]
    fn golden_min_of_quartic() {
        let (t, v) = golden_min(|x| (x - 0.3).powi(4) + 1.0, -1.0, 1.0, 1e-12);
        assert!((t - 0.3).abs() < 1e-3); // quartic floor is flat
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_min_of_parabola() {
        let (t, _) = golden_min(|x| (x - 0.25) * (x - 0.25), 0.0, 1.0, 1e-12);
        assert!((t - 0.25).abs() < 1e-8);
    }
}
