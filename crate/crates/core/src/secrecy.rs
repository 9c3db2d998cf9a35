//! Secrecy capacity, outage and average-rate quantities.
//!
//! Rates are in bits per complex channel use (base-2 logarithms throughout).
//! Normalisation by the main-channel AWGN capacity is a presentation concern
//! and is never applied here.

use std::f64::consts::LN_2;

use crate::channel_model::{ChannelPair, EstimationModel, Geometry};
use crate::error::{require_finite, Error, Result};
use crate::special_math::{
    bisect_monotone, golden_section_max, integrate_semiinfinite, marcum_q1_complement, Tolerance,
};

/// A nonnegative secrecy rate in bits per complex channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SecrecyRate(f64);

impl SecrecyRate {
    pub const ZERO: SecrecyRate = SecrecyRate(0.0);

    pub fn new(bits: f64) -> Result<Self> {
        require_finite("rate", bits)?;
        if bits < 0.0 {
            return Err(Error::domain(format!("secrecy rate must be >= 0, got {bits}")));
        }
        Ok(Self(bits))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<SecrecyRate> for f64 {
    fn from(r: SecrecyRate) -> f64 {
        r.0
    }
}

/// Target secrecy rate for a given channel pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery {
    pub rate: SecrecyRate,
    pub pair: ChannelPair,
}

impl OutageQuery {
    pub fn new(rate: SecrecyRate, pair: ChannelPair) -> Self {
        Self { rate, pair }
    }
}

/// `log2(1 + a) - log2(1 + b)` without forming `1 + a` explicitly.
fn log2_ratio(a: f64, b: f64) -> f64 {
    (a.ln_1p() - b.ln_1p()) / LN_2
}

/// `max(0, log2(1+γ_M) - log2(1+γ_W))` for one fading realisation.
pub fn instantaneous_secrecy_capacity(gamma_m: f64, gamma_w: f64) -> SecrecyRate {
    SecrecyRate(log2_ratio(gamma_m, gamma_w).max(0.0))
}

/// Secrecy capacity of the complex Gaussian wiretap channel at fixed SNRs.
pub fn gaussian_wiretap_capacity(snr_m: f64, snr_w: f64) -> SecrecyRate {
    instantaneous_secrecy_capacity(snr_m, snr_w)
}

/// `P(C_s > 0) = γ̄_M / (γ̄_M + γ̄_W)`.
pub fn prob_positive_secrecy(pair: ChannelPair) -> f64 {
    pair.gbar_m() / (pair.gbar_m() + pair.gbar_w())
}

/// `P(C_s > 0) = 1 / (1 + (d_M / d_W)^α)`.
pub fn prob_positive_from_geometry(geom: &Geometry) -> f64 {
    1.0 / (1.0 + (geom.d_m() / geom.d_w()).powf(geom.alpha()))
}

/// Requirements for reaching a probability of positive secrecy `p0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyThreshold {
    p0: f64,
}

impl SecrecyThreshold {
    pub fn target(&self) -> f64 {
        self.p0
    }

    /// Smallest `γ̄_M / γ̄_W` achieving `P(C_s > 0) >= p0`.
    pub fn snr_ratio(&self) -> f64 {
        self.p0 / (1.0 - self.p0)
    }

    /// Largest `d_M / d_W` achieving `P(C_s > 0) >= p0` under pathloss exponent `alpha`.
    pub fn distance_ratio(&self, alpha: f64) -> Result<f64> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
        }
        Ok(((1.0 - self.p0) / self.p0).powf(1.0 / alpha))
    }
}

pub fn threshold_for_target_probability(p0: f64) -> Result<SecrecyThreshold> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::domain(format!("target probability must be in (0, 1), got {p0}")));
    }
    Ok(SecrecyThreshold { p0 })
}

/// `1 - P_out(R_s) = γ̄_M / (γ̄_M + 2^R γ̄_W) · exp(-(2^R - 1) / γ̄_M)`.
pub fn secrecy_survival(rate: SecrecyRate, pair: ChannelPair) -> f64 {
    let (m, w) = (pair.gbar_m(), pair.gbar_w());
    let excess = (rate.0 * LN_2).exp_m1(); // 2^R - 1
    let scaled_w = (1.0 + excess) * w;
    if !scaled_w.is_finite() {
        return 0.0;
    }
    m / (m + scaled_w) * (-excess / m).exp()
}

/// Outage probability `P(C_s < R_s)` under quasi-static Rayleigh fading.
///
/// At `R_s = 0` this is the right limit `γ̄_W / (γ̄_M + γ̄_W)`.
pub fn outage_probability(q: &OutageQuery) -> f64 {
    let survival = secrecy_survival(q.rate, q.pair);
    if survival < 0.5 {
        return 1.0 - survival;
    }
    // 1 - A e^{-B} = (1 - A) - A (e^{-B} - 1), with A = m / (m + 2^R w).
    let (m, w) = (q.pair.gbar_m(), q.pair.gbar_w());
    let excess = (q.rate.0 * LN_2).exp_m1();
    let total = m + (1.0 + excess) * w;
    (1.0 + excess) * w / total - (m / total) * (-excess / m).exp_m1()
}

/// Largest `R_s` with `P_out(R_s) <= epsilon`; zero when `epsilon` is at or below
/// the outage floor `γ̄_W / (γ̄_M + γ̄_W)`.
pub fn epsilon_outage_capacity(epsilon: f64, pair: ChannelPair, tol: Tolerance) -> Result<SecrecyRate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must be in (0, 1), got {epsilon}")));
    }
    let p_out = |r: f64| outage_probability(&OutageQuery::new(SecrecyRate(r), pair));
    if epsilon <= p_out(0.0) {
        return Ok(SecrecyRate::ZERO);
    }
    let mut hi = 1.0;
    while p_out(hi) < epsilon {
        hi *= 2.0;
    }
    let r = bisect_monotone(p_out, 0.0, hi, epsilon, tol)?;
    Ok(SecrecyRate(r))
}

/// `(1 - P_out(R_s)) · R_s`: throughput when Alice fixes the target rate without CSI.
pub fn average_secrecy_rate_no_csi(rate: SecrecyRate, pair: ChannelPair) -> f64 {
    if rate.0 == 0.0 {
        return 0.0;
    }
    secrecy_survival(rate, pair) * rate.0
}

/// Grid size used by [`optimal_target_rate`].
pub const OPTIMAL_RATE_GRID: usize = 512;

/// Target rate maximising [`average_secrecy_rate_no_csi`], with the maximum.
pub fn optimal_target_rate(pair: ChannelPair, tol: Tolerance) -> (SecrecyRate, f64) {
    optimal_target_rate_on_grid(pair, tol, OPTIMAL_RATE_GRID)
}

/// As [`optimal_target_rate`], scanning `points` log-spaced rates over
/// `(0, 4·log2(1+γ̄_M)]` before refining the best cell by golden section.
pub fn optimal_target_rate_on_grid(pair: ChannelPair, tol: Tolerance, points: usize) -> (SecrecyRate, f64) {
    let points = points.max(3);
    let upper = 4.0 * pair.gbar_m().ln_1p() / LN_2;
    let lower = upper * 1e-4;
    let step = (upper / lower).ln() / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| lower * (step * i as f64).exp()).collect();
    let objective = |r: f64| average_secrecy_rate_no_csi(SecrecyRate(r.max(0.0)), pair);

    let (best, best_value) = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| (i, objective(r)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });

    let lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let hi = grid[(best + 1).min(points - 1)];
    let (r, v) = golden_section_max(objective, lo, hi, tol);
    if v >= best_value {
        (SecrecyRate(r.max(0.0)), v)
    } else {
        (SecrecyRate(grid[best]), best_value)
    }
}

/// Upper bound on the secrecy-outage probability when Alice's estimate of the
/// wiretap coefficient has per-component error variance `σ²`:
/// `1/2 - 1/2 · (1 + 2/σ²)^{-1/2}`.
///
/// At `σ² = 0` the formula's limit `1/2` is returned, although the outage
/// probability itself is zero there.
pub fn imperfect_csi_outage_bound(est: EstimationModel) -> f64 {
    let s2 = est.sigma2();
    if s2 == 0.0 {
        return 0.5;
    }
    0.5 - 0.5 / (1.0 + 2.0 / s2).sqrt()
}

/// `P(γ̂_W < γ_W | γ_W) = 1 - Q1(a, a)` with `a = sqrt(γ_W / (γ̄_W σ²))`.
pub fn underestimate_probability(gamma_w: f64, gbar_w: f64, est: EstimationModel) -> Result<f64> {
    require_finite("gamma_w", gamma_w)?;
    if gamma_w < 0.0 {
        return Err(Error::domain(format!("gamma_w must be >= 0, got {gamma_w}")));
    }
    if !(gbar_w.is_finite() && gbar_w > 0.0) {
        return Err(Error::domain(format!("gbar_w must be positive, got {gbar_w}")));
    }
    if est.sigma2() == 0.0 {
        return Err(Error::domain(
            "conditional law of the estimate is degenerate at sigma2 = 0",
        ));
    }
    let a = (gamma_w / (gbar_w * est.sigma2())).sqrt();
    marcum_q1_complement(a, a)
}

/// Average secrecy rate with perfect wiretap CSI, `E[C_s] = ∫_0^∞ P(C_s > R) dR`.
pub fn perfect_csi_average_rate(pair: ChannelPair, tol: Tolerance) -> Result<f64> {
    integrate_semiinfinite(|r| secrecy_survival(SecrecyRate(r), pair), tol)
}
