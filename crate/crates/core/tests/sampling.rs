mod common;

use secrecy_core::channel_model::sample_estimate_given;
use secrecy_core::monte_carlo::estimate_perfect_csi_rate;
use secrecy_core::secrecy::{
    epsilon_outage_capacity, outage_probability, perfect_csi_average_rate, underestimate_probability,
};
use secrecy_core::special_math::{bisect_monotone, integrate_semiinfinite, marcum_q1_complement};
use secrecy_core::{
    sample_joint, sample_snr, ChannelPair, EstimationModel, McConfig, OutageQuery, SecrecyRate, SeededStream,
    Tolerance,
};

fn pair(m: f64, w: f64) -> ChannelPair {
    ChannelPair::new(m, w).unwrap()
}

#[test]
fn snr_median_and_mean() {
    let mut s = SeededStream::new(2024, 0);
    let mut draws: Vec<f64> = (0..1_000_000).map(|_| sample_snr(1.0, &mut s).unwrap()).collect();
    draws.sort_by(|a, b| a.total_cmp(b));
    let median = 0.5 * (draws[499_999] + draws[500_000]);
    assert!((median / std::f64::consts::LN_2 - 1.0).abs() < 0.01, "median {median}");

    let n = 1_000_000;
    let draws: Vec<f64> = (0..n).map(|_| sample_snr(5.0, &mut s).unwrap()).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    assert!((mean - 5.0).abs() <= 3.0 * (var / n as f64).sqrt(), "mean {mean}");
}

#[test]
fn snr_passes_ks() {
    let mut s = SeededStream::new(77, 3);
    let n = 100_000;
    let mut draws: Vec<f64> = (0..n).map(|_| sample_snr(1.0, &mut s).unwrap()).collect();
    let d = common::ks_statistic(&mut draws, |x| -(-x).exp_m1());
    assert!(d < common::ks_critical_001(n), "D = {d}");
}

#[test]
fn joint_marginals_and_independence() {
    let p = pair(4.0, 0.5);
    let est = EstimationModel::new(0.2).unwrap();
    let mut s = SeededStream::new(8, 0);
    let n = 1_000_000;
    let draws: Vec<_> = (0..n).map(|_| sample_joint(p, est, &mut s)).collect();
    let mean = |f: &dyn Fn(usize) -> f64| (0..n).map(f).sum::<f64>() / n as f64;
    let mm = mean(&|i| draws[i].gamma_m);
    let mw = mean(&|i| draws[i].gamma_w);
    let vm = mean(&|i| (draws[i].gamma_m - mm).powi(2));
    let vw = mean(&|i| (draws[i].gamma_w - mw).powi(2));
    let cov = mean(&|i| (draws[i].gamma_m - mm) * (draws[i].gamma_w - mw));
    let corr = cov / (vm * vw).sqrt();
    assert!(corr.abs() < 4.0 / (n as f64).sqrt(), "corr {corr}");
    // Exponential marginal: sd equals mean.
    assert!((mw - 0.5).abs() < 3.0 * 0.5 / (n as f64).sqrt());
    assert!((mm - 4.0).abs() < 3.0 * 4.0 / (n as f64).sqrt());

    let mut w: Vec<f64> = draws.iter().take(100_000).map(|d| d.gamma_w).collect();
    let dks = common::ks_statistic(&mut w, |x| -(-x / 0.5).exp_m1());
    assert!(dks < common::ks_critical_001(100_000));
}

#[test]
fn conditional_law_by_probability_integral_transform() {
    // u = F(γ̂_W | γ_W) must be uniform over all joint draws.
    for (gbar_w, sigma2) in [(1.0, 1.0), (10.0, 0.1), (3.0, 4.0)] {
        let p = pair(1.0, gbar_w);
        let est = EstimationModel::new(sigma2).unwrap();
        let mut s = SeededStream::new(31, 1);
        let n = 100_000;
        let scale = (gbar_w * sigma2).sqrt();
        let mut u: Vec<f64> = (0..n)
            .map(|_| {
                let d = sample_joint(p, est, &mut s);
                marcum_q1_complement(d.gamma_w.sqrt() / scale, d.gamma_w_hat.sqrt() / scale).unwrap()
            })
            .collect();
        let dks = common::ks_statistic(&mut u, |x| x.clamp(0.0, 1.0));
        assert!(dks < common::ks_critical_001(n), "({gbar_w}, {sigma2}): D = {dks}");
    }
}

#[test]
fn estimate_cdf_matches_integrated_density() {
    for (g, gbar, s2) in [(1.0, 1.0, 1.0), (5.0, 10.0, 0.1), (0.3, 2.0, 2.0)] {
        let scale: f64 = gbar * s2;
        let a = (g / scale).sqrt();
        for y in [0.1, 0.5, 1.0, 3.0, 8.0] {
            let cdf = marcum_q1_complement(a, (y / scale).sqrt()).unwrap();
            let integ = common::panel_integral(|t| common::estimate_pdf(t.max(1e-300), g, gbar, s2), 0.0, y, 64, 1e-13);
            assert!((cdf - integ).abs() < 1e-9, "({g}, {gbar}, {s2}, {y}): {cdf} vs {integ}");
        }
    }
}

#[test]
fn conditional_mean_of_estimate() {
    let gbar_w = 2.0;
    let sigma2 = 0.5;
    let p = pair(1.0, gbar_w);
    let est = EstimationModel::new(sigma2).unwrap();
    let mut s = SeededStream::new(5, 9);
    // Bin draws by γ_W and compare E[γ̂_W - γ_W | bin] with 2σ²γ̄_W.
    let bins = [(0.0, 0.5), (0.5, 2.0), (2.0, 6.0)];
    let mut acc = [(0u64, 0.0f64, 0.0f64); 3];
    for _ in 0..1_000_000 {
        let d = sample_joint(p, est, &mut s);
        if let Some(i) = bins.iter().position(|&(lo, hi)| d.gamma_w >= lo && d.gamma_w < hi) {
            let x = d.gamma_w_hat - d.gamma_w;
            acc[i].0 += 1;
            acc[i].1 += x;
            acc[i].2 += x * x;
        }
    }
    for (n, sum, sq) in acc {
        let n = n as f64;
        let mean = sum / n;
        let se = ((sq / n - mean * mean) / n).sqrt();
        assert!((mean - 2.0 * sigma2 * gbar_w).abs() < 3.0 * se, "{mean} ± {se}");
    }
}

#[test]
fn underestimate_probability_matches_simulation() {
    let gbar_w = 1.0;
    for (gamma_w, sigma2) in [(1.0, 1.0), (0.2, 0.3), (4.0, 2.0)] {
        let est = EstimationModel::new(sigma2).unwrap();
        let mut s = SeededStream::new(12, 0);
        let n = 200_000;
        let hits = (0..n)
            .filter(|_| sample_estimate_given(gamma_w, gbar_w, est, &mut s).unwrap() < gamma_w)
            .count() as f64;
        let freq = hits / n as f64;
        let se = (freq * (1.0 - freq) / n as f64).sqrt();
        let want = underestimate_probability(gamma_w, gbar_w, est).unwrap();
        assert!((freq - want).abs() < 3.0 * se, "{gamma_w}, {sigma2}: {freq} vs {want}");
    }
    let v = underestimate_probability(1.0, 1.0, EstimationModel::new(1.0).unwrap()).unwrap();
    assert!((v - 0.267_12).abs() < 5e-6);
}

#[test]
fn bisection_inverts_outage_probability() {
    let p = pair(20.0, 2.0);
    let f = |r: f64| outage_probability(&OutageQuery::new(SecrecyRate::new(r).unwrap(), p));
    let r = bisect_monotone(f, 0.0, 20.0, 0.1, Tolerance::default()).unwrap();
    assert!((f(r) - 0.1).abs() <= 1e-12);
    let c = epsilon_outage_capacity(0.1, p, Tolerance::default()).unwrap();
    assert!((c.value() - r).abs() < 1e-9);
}

#[test]
fn survival_integral_matches_monte_carlo_mean() {
    let p = pair(1.0, 1.0);
    let quad = integrate_semiinfinite(
        |r| 1.0 - outage_probability(&OutageQuery::new(SecrecyRate::new(r).unwrap(), p)),
        Tolerance::default(),
    )
    .unwrap();
    assert!((quad - perfect_csi_average_rate(p, Tolerance::default()).unwrap()).abs() < 1e-10);
    let mc = estimate_perfect_csi_rate(p, &McConfig::new(10_000_000, 42, 16).unwrap());
    assert!(mc.within(quad, 3.0), "{quad} vs {mc:?}");
    assert!((mc.estimate / quad - 1.0).abs() < 0.01);
}
