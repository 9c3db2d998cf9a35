//! Monotone root bracketing and one-dimensional maximisation.

use crate::error::{Error, Result};
use crate::special_math::Tolerance;

/// Solves `f(x) = target` on `[lo, hi]` for nondecreasing `f` by bisection.
///
/// Stops when `|f(x) - target| <= tol.abs()`, when the bracket width drops to
/// `tol.rel() * |x|`, or when the bracket can no longer be split in `f64`.
pub fn bisect_monotone<F>(f: F, lo: f64, hi: f64, target: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) || !target.is_finite() {
        return Err(Error::domain(format!(
            "invalid bracket [{lo}, {hi}] or target {target}"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo <= target && target <= f_hi) {
        return Err(Error::Bracket { target, f_lo, f_hi });
    }
    if (f_lo - target).abs() <= tol.abs() {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol.abs() {
        return Ok(hi);
    }

    for _ in 0..tol.max_iter() {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let value = f(mid);
        if (value - target).abs() <= tol.abs() || hi - lo <= tol.rel() * mid.abs() {
            return Ok(mid);
        }
        if value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = lo + 0.5 * (hi - lo);
    Err(Error::Accuracy {
        estimate: mid,
        error: hi - lo,
        iterations: tol.max_iter(),
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[lo, hi]`. Returns `(x, f(x))`.
///
/// Assumes a single peak inside the bracket; otherwise it returns a local one.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..tol.max_iter() {
        let scale = c.abs().max(d.abs());
        if b - a <= tol.rel() * scale || b - a <= tol.abs() {
            break;
        }
        if fc >= fd {
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
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
