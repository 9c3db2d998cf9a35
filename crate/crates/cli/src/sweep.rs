//! `sweep`: one quantity over a grid, one column group per curve.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use secrecy_core::monte_carlo::{
    estimate_outage, estimate_perfect_csi_rate, estimate_prob_positive, simulate_imperfect_csi,
};
use secrecy_core::secrecy::{
    average_secrecy_rate_no_csi, epsilon_outage_capacity, gaussian_wiretap_capacity, imperfect_csi_outage_bound,
    optimal_target_rate, outage_probability, perfect_csi_average_rate, prob_positive_secrecy,
};
use secrecy_core::{
    from_db, Backend, ChannelPair, EstimationModel, McConfig, McReport, OutageQuery, SecrecyRate, Tolerance,
};

use crate::args::SweepArgs;
use crate::error::{CliError, Result};
use crate::format::{float, Table};
use crate::seed::cell_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    OutageProb,
    OutageCapacity,
    AvgRateNoCsi,
    OptimalRate,
    ImperfectOutage,
    SecureThroughput,
    LeakedThroughput,
    PerfectCsiRate,
    ProbPositive,
}

impl Quantity {
    fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::usage(format!("unknown quantity `{s}`")))
    }

    fn is_rate(self) -> bool {
        !matches!(
            self,
            Quantity::OutageProb | Quantity::ImperfectOutage | Quantity::ProbPositive
        )
    }

    /// Quantities drawn with the Gaussian wiretap capacity as a baseline.
    fn has_gaussian(self) -> bool {
        matches!(
            self,
            Quantity::OutageCapacity | Quantity::AvgRateNoCsi | Quantity::OptimalRate | Quantity::PerfectCsiRate
        )
    }

    /// Quantities only available by simulation.
    fn mc_only(self) -> bool {
        matches!(
            self,
            Quantity::ImperfectOutage | Quantity::SecureThroughput | Quantity::LeakedThroughput
        )
    }

    fn has_mc_check(self) -> bool {
        matches!(
            self,
            Quantity::OutageProb | Quantity::AvgRateNoCsi | Quantity::PerfectCsiRate | Quantity::ProbPositive
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XAxis {
    GbarMDb,
    /// `d_W / d_M`; the wiretap SNR is `gbar_m / x^alpha`.
    DistanceRatio,
    /// Target rate divided by `log2(1 + gbar_m)`.
    RateNorm,
    /// The outage probability `epsilon`.
    OutageProb,
    Sigma2,
}

impl XAxis {
    fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CliError::usage(format!("unknown x axis `{s}`")))
    }
}

/// Fixed parameters of one curve. Which fields are needed depends on the
/// quantity and the x axis.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbar_m_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbar_w_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Target rate in bits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    /// Target rate as a fraction of `log2(1 + gbar_m)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_norm: Option<f64>,
}

impl Curve {
    fn label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        let fields = [
            ("gbar_m_db", self.gbar_m_db),
            ("gbar_w_db", self.gbar_w_db),
            ("sigma2", self.sigma2),
            ("epsilon", self.epsilon),
            ("alpha", self.alpha),
            ("rate", self.rate),
            ("rate_norm", self.rate_norm),
        ];
        let parts: Vec<String> = fields
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        if parts.is_empty() {
            "value".to_string()
        } else {
            parts.join(" ")
        }
    }
}

pub const DEFAULT_ALPHA: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub x_axis: XAxis,
    pub x_grid: Vec<f64>,
    pub curves: Vec<Curve>,
    #[serde(default)]
    pub normalize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McConfig>,
}

/// One evaluated grid cell.
#[derive(Debug, Clone, Copy, Default)]
struct Cell {
    value: f64,
    gaussian: f64,
    /// Second reported value: the conditional throughput, or the bound for
    /// `imperfect_outage`.
    extra: f64,
    mc: Option<McReport>,
    ok: bool,
}

/// Operating point of one cell after resolving the x axis.
struct Point {
    gbar_m_db: f64,
    gbar_w: f64,
    rate: Option<f64>,
    epsilon: Option<f64>,
    sigma2: Option<f64>,
}

impl SweepSpec {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let spec: SweepSpec = serde_json::from_str(&text).map_err(|e| CliError::Spec {
            path: path.to_path_buf(),
            source: Box::new(e),
        })?;
        Ok(spec)
    }

    /// Builds a single-curve spec from command-line flags.
    pub fn from_args(a: &SweepArgs) -> Result<Self> {
        let quantity = Quantity::parse(a.quantity.as_deref().ok_or_else(|| CliError::usage("--quantity or --spec is required"))?)?;
        let x_axis = XAxis::parse(a.x_axis.as_deref().ok_or_else(|| CliError::usage("--x-axis is required"))?)?;
        let lo = a.x_min.ok_or_else(|| CliError::usage("--x-min is required"))?;
        let hi = a.x_max.ok_or_else(|| CliError::usage("--x-max is required"))?;
        let x_grid = if a.log_grid {
            if lo.is_nan() || lo <= 0.0 {
                return Err(CliError::usage("--log-grid needs a positive --x-min"));
            }
            log_grid(lo, hi, a.x_points)
        } else {
            linear_grid(lo, hi, a.x_points)
        };
        let mc = match a.samples {
            Some(n) => Some(McConfig::new(n, a.seed, a.workers)?),
            None => None,
        };
        Ok(SweepSpec {
            quantity,
            x_axis,
            x_grid,
            curves: vec![Curve {
                label: None,
                gbar_m_db: a.gbar_m_db,
                gbar_w_db: a.gbar_w_db,
                sigma2: a.sigma2,
                epsilon: a.epsilon,
                alpha: a.alpha,
                rate: a.rate,
                rate_norm: None,
            }],
            normalize: a.normalize,
            mc,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_grid.is_empty() {
            return Err(CliError::usage("x_grid is empty"));
        }
        if self.x_grid.iter().any(|x| !x.is_finite()) {
            return Err(CliError::usage("x_grid contains a non-finite value"));
        }
        if self.x_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::usage("x_grid must be strictly increasing"));
        }
        if self.curves.is_empty() {
            return Err(CliError::usage("at least one curve is required"));
        }
        if self.quantity.mc_only() && self.mc.is_none() {
            return Err(CliError::usage("this quantity is simulated and needs an mc config"));
        }
        if let Some(c) = &self.mc {
            McConfig::new(c.samples, c.seed, c.workers)?;
        }
        let axis_ok = match self.x_axis {
            XAxis::OutageProb => self.quantity == Quantity::OutageCapacity,
            XAxis::RateNorm => matches!(self.quantity, Quantity::OutageProb | Quantity::AvgRateNoCsi),
            XAxis::Sigma2 => matches!(
                self.quantity,
                Quantity::ImperfectOutage | Quantity::SecureThroughput | Quantity::LeakedThroughput
            ),
            XAxis::GbarMDb | XAxis::DistanceRatio => true,
        };
        if !axis_ok {
            return Err(CliError::usage("the x axis does not apply to this quantity"));
        }
        let mut labels: Vec<String> = self.curves.iter().map(Curve::label).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::usage("curve labels must be unique"));
        }
        for curve in &self.curves {
            self.point(curve, self.x_grid[0])?;
        }
        Ok(())
    }

    fn point(&self, c: &Curve, x: f64) -> Result<Point> {
        let need = |name: &str, v: Option<f64>| v.ok_or_else(|| CliError::usage(format!("curve needs `{name}`")));
        let gbar_m_db = match self.x_axis {
            XAxis::GbarMDb => x,
            _ => need("gbar_m_db", c.gbar_m_db)?,
        };
        let gbar_w = match self.x_axis {
            XAxis::DistanceRatio => {
                if x <= 0.0 {
                    return Err(CliError::usage("distance ratios must be positive"));
                }
                from_db(gbar_m_db) / x.powf(c.alpha.unwrap_or(DEFAULT_ALPHA))
            }
            _ => from_db(need("gbar_w_db", c.gbar_w_db)?),
        };
        let capacity = (1.0 + from_db(gbar_m_db)).log2();
        let wants_rate = matches!(self.quantity, Quantity::OutageProb | Quantity::AvgRateNoCsi);
        let rate = if !wants_rate {
            None
        } else if self.x_axis == XAxis::RateNorm {
            Some(x * capacity)
        } else if let Some(r) = c.rate {
            Some(r)
        } else if let Some(r) = c.rate_norm {
            Some(r * capacity)
        } else {
            return Err(CliError::usage("curve needs `rate` or `rate_norm`"));
        };
        let epsilon = match (self.quantity, self.x_axis) {
            (Quantity::OutageCapacity, XAxis::OutageProb) => Some(x),
            (Quantity::OutageCapacity, _) => Some(need("epsilon", c.epsilon)?),
            _ => None,
        };
        let sigma2 = match (self.quantity.mc_only(), self.x_axis) {
            (true, XAxis::Sigma2) => Some(x),
            (true, _) => Some(need("sigma2", c.sigma2)?),
            _ => None,
        };
        Ok(Point {
            gbar_m_db,
            gbar_w,
            rate,
            epsilon,
            sigma2,
        })
    }

    fn eval_cell(&self, c: &Curve, x: f64, mc: Option<McConfig>) -> Result<Cell> {
        let p = self.point(c, x)?;
        let gbar_m = from_db(p.gbar_m_db);
        let pair = ChannelPair::new(gbar_m, p.gbar_w)?;
        let tol = Tolerance::default();
        let scale = if self.normalize && self.quantity.is_rate() {
            1.0 / (1.0 + gbar_m).log2()
        } else {
            1.0
        };
        let mut cell = Cell::default();
        match self.quantity {
            Quantity::ProbPositive => {
                cell.value = prob_positive_secrecy(pair);
                cell.mc = mc.map(|m| estimate_prob_positive(pair, &m));
            }
            Quantity::OutageProb => {
                let q = OutageQuery::new(SecrecyRate::new(p.rate.unwrap_or(0.0))?, pair);
                cell.value = outage_probability(&q);
                cell.mc = mc.map(|m| estimate_outage(&q, &m));
            }
            Quantity::AvgRateNoCsi => {
                let r = SecrecyRate::new(p.rate.unwrap_or(0.0))?;
                cell.value = average_secrecy_rate_no_csi(r, pair);
                cell.mc = mc.map(|m| {
                    let o = estimate_outage(&OutageQuery::new(r, pair), &m);
                    McReport {
                        estimate: (1.0 - o.estimate) * r.value(),
                        std_error: o.std_error * r.value(),
                        ..o
                    }
                });
            }
            Quantity::OutageCapacity => {
                cell.value = epsilon_outage_capacity(p.epsilon.unwrap_or(0.0), pair, tol)?.value();
            }
            Quantity::OptimalRate => {
                cell.value = optimal_target_rate(pair, tol).1;
            }
            Quantity::PerfectCsiRate => {
                cell.value = perfect_csi_average_rate(pair, tol)?;
                cell.mc = mc.map(|m| estimate_perfect_csi_rate(pair, &m));
            }
            Quantity::ImperfectOutage | Quantity::SecureThroughput | Quantity::LeakedThroughput => {
                let est = EstimationModel::new(p.sigma2.unwrap_or(0.0))?;
                let m = mc.ok_or_else(|| CliError::usage("this quantity needs an mc config"))?;
                let r = simulate_imperfect_csi(pair, est, &m);
                let (main, extra) = match self.quantity {
                    Quantity::ImperfectOutage => (r.outage_rate, imperfect_csi_outage_bound(est)),
                    Quantity::SecureThroughput => (r.avg_secure_throughput, r.avg_secure_conditional.estimate),
                    _ => (r.avg_leaked_throughput, r.avg_leaked_conditional.estimate),
                };
                cell.value = main.estimate;
                cell.extra = extra;
                cell.mc = Some(main);
                cell.ok = match self.quantity {
                    Quantity::ImperfectOutage => main.estimate <= extra + 3.0 * main.std_error,
                    _ => true,
                };
            }
        }
        if self.quantity.has_gaussian() {
            cell.gaussian = gaussian_wiretap_capacity(gbar_m, p.gbar_w).value() * scale;
        }
        if let (Some(m), true) = (cell.mc, self.quantity.has_mc_check()) {
            cell.ok = m.within(cell.value, 3.0);
        }
        if self.quantity.is_rate() {
            cell.value *= scale;
            if matches!(self.quantity, Quantity::SecureThroughput | Quantity::LeakedThroughput) {
                cell.extra *= scale;
            }
            if let Some(m) = cell.mc.as_mut() {
                m.estimate *= scale;
                m.std_error *= scale;
            }
        }
        Ok(cell)
    }

    fn header(&self) -> Vec<String> {
        let mut h = vec!["x".to_string()];
        for c in &self.curves {
            let l = c.label();
            h.push(l.clone());
            if self.quantity.has_gaussian() {
                h.push(format!("{l}_gaussian"));
            }
            match self.quantity {
                Quantity::ImperfectOutage => {
                    h.push(format!("{l}_bound"));
                    h.push(format!("{l}_mc_se"));
                    h.push(format!("{l}_mc_ok"));
                }
                Quantity::SecureThroughput | Quantity::LeakedThroughput => {
                    h.push(format!("{l}_conditional"));
                    h.push(format!("{l}_mc_se"));
                }
                q if q.has_mc_check() && self.mc.is_some() => {
                    h.push(format!("{l}_mc"));
                    h.push(format!("{l}_mc_se"));
                    h.push(format!("{l}_mc_ok"));
                }
                _ => {}
            }
        }
        h
    }

    /// Evaluates every cell and lays the results out in x-grid order.
    pub fn run(&self, backend: Backend) -> Result<Table> {
        self.validate()?;
        let nx = self.x_grid.len();
        let mc = self.mc.map(|c| c.with_backend(backend));
        let cells = backend.map_indexed(nx * self.curves.len(), |i| {
            let (ci, xi) = (i / nx, i % nx);
            let cfg = mc.map(|m| m.with_seed(cell_seed(m.seed, i as u64)));
            self.eval_cell(&self.curves[ci], self.x_grid[xi], cfg)
        });
        let cells: Vec<Cell> = cells.into_iter().collect::<Result<_>>()?;
        let mut table = Table::new(self.header());
        for (xi, &x) in self.x_grid.iter().enumerate() {
            let mut row = vec![float(x)];
            for ci in 0..self.curves.len() {
                let cell = &cells[ci * nx + xi];
                row.push(float(cell.value));
                if self.quantity.has_gaussian() {
                    row.push(float(cell.gaussian));
                }
                let se = cell.mc.map(|m| m.std_error).unwrap_or(f64::NAN);
                match self.quantity {
                    Quantity::ImperfectOutage => {
                        row.push(float(cell.extra));
                        row.push(float(se));
                        row.push(cell.ok.to_string());
                    }
                    Quantity::SecureThroughput | Quantity::LeakedThroughput => {
                        row.push(float(cell.extra));
                        row.push(float(se));
                    }
                    q if q.has_mc_check() && self.mc.is_some() => {
                        row.push(float(cell.mc.map(|m| m.estimate).unwrap_or(f64::NAN)));
                        row.push(float(se));
                        row.push(cell.ok.to_string());
                    }
                    _ => {}
                }
            }
            table.push(row);
        }
        Ok(table)
    }
}

pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// Log-spaced grid whose end points are exactly `lo` and `hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut g: Vec<f64> = linear_grid(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect();
    if n > 0 {
        g[0] = lo;
        g[n - 1] = if n > 1 { hi } else { lo };
    }
    g
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let spec = match &a.spec {
        Some(p) => SweepSpec::from_file(p)?,
        None => SweepSpec::from_args(a)?,
    };
    spec.run(Backend::default())?.write_to(&a.out)
}
