//! Modified Bessel function of the first kind, order zero.

use std::f64::consts::PI;

use crate::error::{require_finite, Error, Result};

/// Below this argument the power series is used, above it the asymptotic expansion.
/// At x = 15 the smallest asymptotic term is ~1.4e-14 relative.
const SERIES_LIMIT: f64 = 15.0;

fn check(x: f64) -> Result<()> {
    require_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::domain(format!("I0 argument must be >= 0, got {x}")));
    }
    Ok(())
}

/// Power series `sum (x/2)^{2k} / (k!)^2`. All terms are positive.
fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term <= sum * f64::EPSILON * 0.5 {
            return sum;
        }
        k += 1.0;
    }
}

/// `sqrt(2 pi x) e^{-x} I0(x)` via the Hankel expansion, truncated at its smallest term.
fn asymptotic_sum(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if next >= term || next <= sum * f64::EPSILON * 0.5 {
            return sum;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
}

/// `I0(x)` for `x >= 0`. Overflows to `+inf` above x ~ 713.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check(x)?;
    if x < SERIES_LIMIT {
        Ok(series(x))
    } else {
        // Split the exponential so that the result only overflows when I0 itself does.
        let half = (0.5 * x).exp();
        Ok(half * (asymptotic_sum(x) / (2.0 * PI * x).sqrt()) * half)
    }
}

/// `e^{-x} I0(x)`, finite for every finite `x >= 0`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    check(x)?;
    if x < SERIES_LIMIT {
        Ok(series(x) * (-x).exp())
    } else {
        Ok(asymptotic_sum(x) / (2.0 * PI * x).sqrt())
    }
}
