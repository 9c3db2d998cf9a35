//! `figures`: the canonical sweep specifications.
//!
//! Each dataset is written as `<name>.csv` next to the `<name>.json` spec that
//! produced it, so any dataset can be regenerated with `sweep --spec`.

use std::fs;
use std::path::Path;

use secrecy_core::{Backend, McConfig};

use crate::args::FiguresArgs;
use crate::error::{CliError, Result};
use crate::sweep::{linear_grid, log_grid, Curve, Quantity, SweepSpec, XAxis};

pub const WIRETAP_CURVES_DB: [f64; 4] = [-10.0, 0.0, 10.0, 20.0];
pub const MAIN_CURVES_DB: [f64; 4] = [0.0, 10.0, 20.0, 30.0];
pub const SIGMA2_CURVES: [f64; 3] = [0.1, 1.0, 10.0];
pub const IMPERFECT_CSI_GBAR_W_DB: f64 = 10.0;
pub const RATE_NORM: f64 = 0.1;
pub const ALPHA: f64 = 3.0;
pub const EPSILONS: [f64; 2] = [0.1, 0.75];
/// `(gbar_m_db, gbar_w_db)` for the plots that fix both channels.
pub const PAIRS_DB: [(f64, f64); 4] = [(20.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)];

fn gbar_m_grid() -> Vec<f64> {
    linear_grid(-10.0, 50.0, 61)
}

fn wiretap_curves(f: impl Fn(f64) -> Curve) -> Vec<Curve> {
    WIRETAP_CURVES_DB
        .iter()
        .map(|&w| Curve {
            label: Some(format!("gbar_w_db={w}")),
            gbar_w_db: Some(w),
            ..f(w)
        })
        .collect()
}

fn pair_curves() -> Vec<Curve> {
    PAIRS_DB
        .iter()
        .map(|&(m, w)| Curve {
            label: Some(format!("gbar_m_db={m} gbar_w_db={w}")),
            gbar_m_db: Some(m),
            gbar_w_db: Some(w),
            ..Curve::default()
        })
        .collect()
}

fn sigma2_curves() -> Vec<Curve> {
    SIGMA2_CURVES
        .iter()
        .map(|&s| Curve {
            label: Some(format!("sigma2={s}")),
            gbar_w_db: Some(IMPERFECT_CSI_GBAR_W_DB),
            sigma2: Some(s),
            ..Curve::default()
        })
        .collect()
}

fn spec(quantity: Quantity, x_axis: XAxis, x_grid: Vec<f64>, curves: Vec<Curve>, normalize: bool) -> SweepSpec {
    SweepSpec {
        quantity,
        x_axis,
        x_grid,
        curves,
        normalize,
        mc: None,
    }
}

/// The canonical datasets, by file stem. `mc` is attached where the quantity
/// is only available by simulation.
pub fn canonical_specs(mc: McConfig) -> Vec<(String, SweepSpec)> {
    let rate_norm = |_| Curve {
        rate_norm: Some(RATE_NORM),
        ..Curve::default()
    };
    let mut v = vec![(
        "outage_vs_gbar_m".to_string(),
        spec(Quantity::OutageProb, XAxis::GbarMDb, gbar_m_grid(), wiretap_curves(rate_norm), false),
    )];
    let distance_curves = MAIN_CURVES_DB
        .iter()
        .map(|&m| Curve {
            label: Some(format!("gbar_m_db={m}")),
            gbar_m_db: Some(m),
            alpha: Some(ALPHA),
            rate_norm: Some(RATE_NORM),
            ..Curve::default()
        })
        .collect();
    v.push((
        "outage_vs_distance_ratio".to_string(),
        spec(Quantity::OutageProb, XAxis::DistanceRatio, log_grid(0.1, 10.0, 61), distance_curves, false),
    ));
    for eps in EPSILONS {
        let curves = wiretap_curves(|_| Curve {
            epsilon: Some(eps),
            ..Curve::default()
        });
        v.push((
            format!("outage_capacity_eps_{eps}_vs_gbar_m"),
            spec(Quantity::OutageCapacity, XAxis::GbarMDb, gbar_m_grid(), curves, true),
        ));
    }
    v.push((
        "outage_capacity_vs_outage_prob".to_string(),
        spec(Quantity::OutageCapacity, XAxis::OutageProb, linear_grid(0.01, 0.99, 99), pair_curves(), true),
    ));
    v.push((
        "avg_rate_vs_rate_norm".to_string(),
        spec(Quantity::AvgRateNoCsi, XAxis::RateNorm, linear_grid(0.01, 1.0, 100), pair_curves(), true),
    ));
    v.push((
        "optimal_avg_rate_vs_gbar_m".to_string(),
        spec(Quantity::OptimalRate, XAxis::GbarMDb, gbar_m_grid(), wiretap_curves(|_| Curve::default()), true),
    ));
    for (name, q, normalize) in [
        ("imperfect_outage_vs_gbar_m", Quantity::ImperfectOutage, false),
        ("secure_throughput_vs_gbar_m", Quantity::SecureThroughput, true),
        ("leaked_throughput_vs_gbar_m", Quantity::LeakedThroughput, true),
    ] {
        let mut s = spec(q, XAxis::GbarMDb, gbar_m_grid(), sigma2_curves(), normalize);
        s.mc = Some(mc);
        v.push((name.to_string(), s));
    }
    v.push((
        "perfect_csi_rate_vs_gbar_m".to_string(),
        spec(Quantity::PerfectCsiRate, XAxis::GbarMDb, gbar_m_grid(), wiretap_curves(|_| Curve::default()), true),
    ));
    v
}

fn write_json(path: &Path, spec: &SweepSpec) -> Result<()> {
    let mut text = serde_json::to_string_pretty(spec).expect("spec serialises");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn cmd_figures(a: &FiguresArgs) -> Result<()> {
    let mc = McConfig::new(a.mc.samples, a.mc.seed, a.mc.workers)?;
    fs::create_dir_all(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    for (name, spec) in canonical_specs(mc) {
        write_json(&a.out.join(format!("{name}.json")), &spec)?;
        let csv = a.out.join(format!("{name}.csv"));
        spec.run(Backend::default())?.write_to(&csv)?;
        println!("{}", csv.display());
    }
    Ok(())
}
