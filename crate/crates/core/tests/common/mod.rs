//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the routines it is used to check.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Power series for I0 with compensated (Kahan) summation.
pub fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let (mut sum, mut comp) = (1.0f64, 0.0f64);
    let mut term = 1.0f64;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term < sum * 1e-18 {
            return sum;
        }
        k += 1.0;
    }
}

/// `e^{-x} I0(x) = (1/π) ∫_0^π exp(x (cos θ - 1)) dθ`.
pub fn i0_scaled_integral(x: f64) -> f64 {
    panel_integral(|th: f64| (x * (th.cos() - 1.0)).exp(), 0.0, PI, 400, 1e-14) / PI
}

/// `e^{-x} I0(x)` from the power series: compensated summation below 700,
/// otherwise log-space terms summed over the window around the peak term.
pub fn i0_scaled(x: f64) -> f64 {
    if x < 700.0 {
        return i0_series(x) * (-x).exp();
    }
    let peak = 0.5 * x;
    let half_width = 8.0 * peak.sqrt() + 10.0;
    let k0 = (peak - half_width).floor().max(0.0);
    let k1 = (peak + half_width).ceil();
    let ln_half_x = (0.5 * x).ln();
    let mut ln_term = 2.0 * k0 * ln_half_x - 2.0 * ln_factorial(k0) - x;
    let mut sum = 0.0;
    let mut k = k0;
    while k <= k1 {
        sum += ln_term.exp();
        k += 1.0;
        ln_term += 2.0 * (ln_half_x - k.ln());
    }
    sum
}

/// Stirling series for `ln k!`, accurate to double precision for k >= 30.
fn ln_factorial(k: f64) -> f64 {
    if k < 30.0 {
        return (1..=k as u64).map(|i| (i as f64).ln()).sum();
    }
    let inv = 1.0 / k;
    let inv2 = inv * inv;
    k * k.ln() - k
        + 0.5 * (2.0 * PI * k).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Marcum Q1 by direct quadrature of `∫_b^∞ t exp(-(t²+a²)/2) I0(a t) dt`.
///
/// The integrand is written as `t exp(-(t-a)²/2) e^{-at} I0(at)`; beyond
/// `max(a, b) + 15` it is below `e^{-112}` of its peak.
pub fn marcum_q1_quadrature(a: f64, b: f64) -> f64 {
    marcum_integrand_integral(a, b, a.max(b) + 15.0)
}

/// `∫_lo^hi t exp(-(t-a)²/2) e^{-at} I0(at) dt` by composite 20-point Gauss–Legendre.
pub fn marcum_integrand_integral(a: f64, lo: f64, hi: f64) -> f64 {
    let panels = ((hi - lo) / 0.25).ceil().max(1.0) as usize;
    composite_gauss(
        |t: f64| t * (-0.5 * (t - a) * (t - a)).exp() * i0_scaled(a * t),
        lo,
        hi,
        panels,
    )
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub fn composite_gauss<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (hi - lo) / panels as f64;
    (0..panels)
        .map(|i| {
            let c = lo + h * (i as f64 + 0.5);
            0.5 * h * rule.iter().map(|&(x, w)| w * f(c + 0.5 * h * x)).sum::<f64>()
        })
        .sum()
}

/// Sum of adaptive Simpson integrals over `panels` equal sub-intervals.
pub fn panel_integral<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize, rel: f64) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let a = lo + h * i as f64;
        let b = if i + 1 == panels { hi } else { a + h };
        total += adaptive_simpson(&f, a, b, rel);
    }
    total
}

pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = (rel * whole.abs()).max(1e-300);
    simpson_step(f, a, b, fa, fm, fb, whole, eps, 18)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// One-sample Kolmogorov–Smirnov statistic. Sorts `samples` in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic KS critical value at significance 0.01.
pub fn ks_critical_001(n: usize) -> f64 {
    1.627_61 / (n as f64).sqrt()
}

/// Noncentral χ² (2 dof) density of `γ̂_W` given `γ_W`, written with a scaled I0.
pub fn estimate_pdf(y: f64, gamma_w: f64, gbar_w: f64, sigma2: f64) -> f64 {
    let s = gbar_w * sigma2;
    let d = gamma_w.sqrt() - y.sqrt();
    (-(d * d) / (2.0 * s)).exp() * i0_scaled((gamma_w * y).sqrt() / s) / (2.0 * s)
}
