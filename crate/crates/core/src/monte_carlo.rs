//! Seeded Monte-Carlo oracle for the closed-form secrecy quantities, and the
//! imperfect-CSI throughputs which are only available by simulation.
//!
//! A run with `workers = k` draws from streams `0..k` of the configured seed.
//! Worker `i` consumes `samples / k` draws (the last one also takes the
//! remainder) and returns count/sum/sum-of-squares tallies, which are merged in
//! stream order. Results therefore depend only on `(seed, samples, workers)`.

use serde::{Deserialize, Serialize};

use crate::channel_model::{sample_joint, ChannelPair, EstimationModel, FadingDraw, SeededStream};
use crate::error::{Error, Result};
use crate::exec::Backend;
use crate::secrecy::{instantaneous_secrecy_capacity, OutageQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    #[serde(skip)]
    pub backend: Backend,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64, workers: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::domain("samples must be at least 1"));
        }
        if workers == 0 {
            return Err(Error::domain("workers must be at least 1"));
        }
        Ok(Self {
            samples,
            seed,
            workers,
            backend: Backend::default(),
        })
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples.max(1);
        self
    }

    fn share(&self, worker: usize) -> u64 {
        let workers = self.workers as u64;
        let base = self.samples / workers;
        if worker as u64 == workers - 1 {
            base + self.samples % workers
        } else {
            base
        }
    }
}

/// A Monte-Carlo mean with its normal-approximation standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub estimate: f64,
    /// Sample standard deviation divided by `sqrt(samples)`.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McReport {
    /// `(estimate - reference) / std_error`; `±inf` or `0` when `std_error` is zero.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.estimate - reference;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    /// `|estimate - reference| <= k * std_error`.
    pub fn within(&self, reference: f64, k: f64) -> bool {
        (self.estimate - reference).abs() <= k * self.std_error
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Moments {
    count: u64,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    fn report(&self, seed: u64) -> McReport {
        let n = self.count as f64;
        let (estimate, std_error) = if self.count == 0 {
            (0.0, 0.0)
        } else if self.count == 1 {
            (self.sum, 0.0)
        } else {
            let mean = self.sum / n;
            let var = ((self.sum_sq - self.sum * mean) / (n - 1.0)).max(0.0);
            (mean, (var / n).sqrt())
        };
        McReport {
            estimate,
            std_error,
            samples: self.count,
            seed,
        }
    }
}

/// Per-stream accumulator over fading draws.
trait Tally: Send {
    fn observe(&mut self, draw: &FadingDraw);
    fn merge(&mut self, other: &Self);
}

fn run<T, I>(pair: ChannelPair, est: EstimationModel, cfg: &McConfig, init: I) -> T
where
    T: Tally,
    I: Fn() -> T + Sync + Send,
{
    let partial = cfg.backend.map_indexed(cfg.workers, |worker| {
        let mut stream = SeededStream::new(cfg.seed, worker as u64);
        let mut tally = init();
        for _ in 0..cfg.share(worker) {
            tally.observe(&sample_joint(pair, est, &mut stream));
        }
        tally
    });
    let mut total = init();
    for t in &partial {
        total.merge(t);
    }
    total
}

struct Scalar<'a, F> {
    f: &'a F,
    moments: Moments,
}

impl<F: Fn(&FadingDraw) -> f64 + Sync> Tally for Scalar<'_, F> {
    fn observe(&mut self, draw: &FadingDraw) {
        self.moments.push((self.f)(draw));
    }

    fn merge(&mut self, other: &Self) {
        self.moments.merge(&other.moments);
    }
}

fn run_scalar<F>(pair: ChannelPair, est: EstimationModel, cfg: &McConfig, f: F) -> McReport
where
    F: Fn(&FadingDraw) -> f64 + Sync,
{
    let tally = run(pair, est, cfg, || Scalar {
        f: &f,
        moments: Moments::default(),
    });
    tally.moments.report(cfg.seed)
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Fraction of draws with `γ_M > γ_W`, with its binomial standard error.
pub fn estimate_prob_positive(pair: ChannelPair, cfg: &McConfig) -> McReport {
    run_scalar(pair, EstimationModel::perfect(), cfg, |d| {
        indicator(d.gamma_m > d.gamma_w)
    })
}

/// Fraction of draws whose instantaneous secrecy capacity is below `q.rate`.
///
/// At `rate = 0` the event is empty and the estimate is zero, unlike the
/// closed form which returns its right limit there.
pub fn estimate_outage(q: &OutageQuery, cfg: &McConfig) -> McReport {
    let rate = q.rate.value();
    run_scalar(q.pair, EstimationModel::perfect(), cfg, |d| {
        indicator(instantaneous_secrecy_capacity(d.gamma_m, d.gamma_w).value() < rate)
    })
}

/// Sample mean of the instantaneous secrecy capacity.
pub fn estimate_perfect_csi_rate(pair: ChannelPair, cfg: &McConfig) -> McReport {
    run_scalar(pair, EstimationModel::perfect(), cfg, |d| {
        instantaneous_secrecy_capacity(d.gamma_m, d.gamma_w).value()
    })
}

/// Outcome of transmitting at the estimated secrecy capacity `Ĉ_s`.
///
/// Unconditional throughputs average over every draw, counting `Ĉ_s` only on
/// the relevant transmissions and zero elsewhere. Conditional throughputs
/// average `Ĉ_s` over the relevant transmissions only; their `samples` field is
/// the number of such transmissions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImperfectCsiReport {
    /// `P(γ̂_W < γ_M, γ̂_W < γ_W)`.
    pub outage_rate: McReport,
    pub avg_secure_throughput: McReport,
    pub avg_secure_conditional: McReport,
    pub avg_leaked_throughput: McReport,
    pub avg_leaked_conditional: McReport,
    /// Mean of `Ĉ_s` over all draws; equals secure plus leaked throughput.
    pub avg_transmitted_rate: McReport,
}

#[derive(Default)]
struct CsiTally {
    outage: Moments,
    secure: Moments,
    secure_given: Moments,
    leaked: Moments,
    leaked_given: Moments,
    transmitted: Moments,
}

impl Tally for CsiTally {
    fn observe(&mut self, d: &FadingDraw) {
        let rate = instantaneous_secrecy_capacity(d.gamma_m, d.gamma_w_hat).value();
        let transmit = rate > 0.0;
        let outage = transmit && d.gamma_w_hat < d.gamma_w;
        self.outage.push(indicator(outage));
        self.transmitted.push(rate);
        if outage {
            self.leaked.push(rate);
            self.leaked_given.push(rate);
            self.secure.push(0.0);
        } else {
            self.secure.push(rate);
            self.leaked.push(0.0);
            if transmit {
                self.secure_given.push(rate);
            }
        }
    }

    fn merge(&mut self, o: &Self) {
        self.outage.merge(&o.outage);
        self.secure.merge(&o.secure);
        self.secure_given.merge(&o.secure_given);
        self.leaked.merge(&o.leaked);
        self.leaked_given.merge(&o.leaked_given);
        self.transmitted.merge(&o.transmitted);
    }
}

/// Simulates Alice transmitting at `Ĉ_s = max(0, log2(1+γ_M) - log2(1+γ̂_W))`.
///
/// A transmission happens iff `Ĉ_s > 0`; it is a secrecy outage iff
/// additionally `γ̂_W < γ_W`. Draws without transmission are not outages and
/// contribute zero throughput.
pub fn simulate_imperfect_csi(pair: ChannelPair, est: EstimationModel, cfg: &McConfig) -> ImperfectCsiReport {
    let t = run(pair, est, cfg, CsiTally::default);
    let seed = cfg.seed;
    ImperfectCsiReport {
        outage_rate: t.outage.report(seed),
        avg_secure_throughput: t.secure.report(seed),
        avg_secure_conditional: t.secure_given.report(seed),
        avg_leaked_throughput: t.leaked.report(seed),
        avg_leaked_conditional: t.leaked_given.report(seed),
        avg_transmitted_rate: t.transmitted.report(seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secrecy::{
        imperfect_csi_outage_bound, outage_probability, prob_positive_secrecy, SecrecyRate,
    };

    fn pair(m: f64, w: f64) -> ChannelPair {
        ChannelPair::new(m, w).unwrap()
    }

    fn cfg(samples: u64, seed: u64) -> McConfig {
        McConfig::new(samples, seed, 8).unwrap()
    }

    #[test]
    fn config_validates_and_partitions() {
        assert!(McConfig::new(0, 1, 1).is_err());
        assert!(McConfig::new(1, 1, 0).is_err());
        let c = McConfig::new(103, 0, 10).unwrap();
        let shares: Vec<u64> = (0..10).map(|w| c.share(w)).collect();
        assert_eq!(shares.iter().sum::<u64>(), 103);
        assert_eq!(shares[9], 13);
        assert!(shares[..9].iter().all(|&s| s == 10));
    }

    #[test]
    fn prob_positive_matches_closed_form() {
        for (m, w) in [(3.0, 1.0), (1.0, 1.0)] {
            let r = estimate_prob_positive(pair(m, w), &cfg(1_000_000, 11));
            assert!(r.within(prob_positive_secrecy(pair(m, w)), 3.0), "{r:?}");
            assert_eq!(r.samples, 1_000_000);
        }
    }

    #[test]
    fn deterministic_and_backend_independent() {
        let c = cfg(50_000, 99);
        let a = estimate_prob_positive(pair(2.0, 1.0), &c);
        let b = estimate_prob_positive(pair(2.0, 1.0), &c);
        let s = estimate_prob_positive(pair(2.0, 1.0), &c.with_backend(Backend::Sequential));
        assert_eq!(a, b);
        assert_eq!(a, s);
        let est = EstimationModel::new(0.3).unwrap();
        let x = simulate_imperfect_csi(pair(10.0, 3.0), est, &c);
        let y = simulate_imperfect_csi(pair(10.0, 3.0), est, &c.with_backend(Backend::Sequential));
        assert_eq!(x, y);
    }

    #[test]
    fn outage_matches_closed_form_and_limits() {
        let q = OutageQuery::new(SecrecyRate::new(1.0).unwrap(), pair(1.0, 1.0));
        let r = estimate_outage(&q, &cfg(1_000_000, 5));
        assert!(r.within(1.0 - (-1.0f64).exp() / 3.0, 3.0), "{r:?}");

        let q = OutageQuery::new(SecrecyRate::new(1e-9).unwrap(), pair(1.0, 3.0));
        let r = estimate_outage(&q, &cfg(1_000_000, 6));
        assert!(r.within(0.75, 3.0) && (r.estimate - outage_probability(&q)).abs() < 3e-3);

        let q = OutageQuery::new(SecrecyRate::new(60.0).unwrap(), pair(1e3, 1e-3));
        assert_eq!(estimate_outage(&q, &cfg(100_000, 7)).estimate, 1.0);
    }

    #[test]
    fn perfect_csi_rate_limits_and_scaling() {
        let r = estimate_perfect_csi_rate(pair(1e-6, 1e6), &cfg(100_000, 3));
        assert!(r.estimate < 1e-4);
        let small = estimate_perfect_csi_rate(pair(10.0, 1.0), &cfg(500_000, 4));
        let large = estimate_perfect_csi_rate(pair(10.0, 1.0), &cfg(2_000_000, 4));
        let ratio = small.std_error / large.std_error;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn perfect_estimation_never_leaks() {
        let r = simulate_imperfect_csi(pair(10.0, 10.0), EstimationModel::perfect(), &cfg(200_000, 1));
        assert_eq!(r.outage_rate.estimate, 0.0);
        assert_eq!(r.avg_leaked_throughput.estimate, 0.0);
        assert_eq!(r.avg_leaked_conditional.samples, 0);
        assert!(r.avg_secure_throughput.estimate > 0.0);
    }

    #[test]
    fn throughput_accounting_identity() {
        for s2 in [0.05, 1.0, 20.0] {
            let r = simulate_imperfect_csi(pair(30.0, 3.0), EstimationModel::new(s2).unwrap(), &cfg(100_000, 8));
            let sum = r.avg_secure_throughput.estimate + r.avg_leaked_throughput.estimate;
            assert!((sum - r.avg_transmitted_rate.estimate).abs() <= 1e-12 * sum.max(1.0));
            assert!(r.avg_secure_conditional.estimate >= 0.0 && r.avg_leaked_conditional.estimate >= 0.0);
            assert!((0.0..=1.0).contains(&r.outage_rate.estimate));
        }
    }

    #[test]
    fn outage_below_bound_and_decreasing_in_sigma2() {
        let p = pair(1e3, 10.0);
        let mut prev = f64::INFINITY;
        for s2 in [0.1, 1.0, 10.0] {
            let est = EstimationModel::new(s2).unwrap();
            let r = simulate_imperfect_csi(p, est, &cfg(1_000_000, 21));
            let o = r.outage_rate;
            assert!(o.estimate <= imperfect_csi_outage_bound(est) + 3.0 * o.std_error);
            assert!(o.estimate < prev);
            prev = o.estimate;
        }
    }

    #[test]
    fn z_score_edge_cases() {
        let r = McReport { estimate: 0.5, std_error: 0.0, samples: 10, seed: 0 };
        assert_eq!(r.z_score(0.5), 0.0);
        assert_eq!(r.z_score(0.4), f64::INFINITY);
        let r = McReport { estimate: 0.5, std_error: 0.1, samples: 10, seed: 0 };
        assert!((r.z_score(0.3) - 2.0).abs() < 1e-12);
    }
}
