//! `verify`: closed forms against their Monte-Carlo estimates.

use secrecy_core::monte_carlo::{
    estimate_outage, estimate_perfect_csi_rate, estimate_prob_positive, simulate_imperfect_csi,
};
use secrecy_core::secrecy::{
    imperfect_csi_outage_bound, outage_probability, perfect_csi_average_rate, prob_positive_secrecy,
};
use secrecy_core::{ChannelPair, EstimationModel, McConfig, McReport, OutageQuery, SecrecyRate, Tolerance};

use crate::args::VerifyArgs;
use crate::error::{CliError, Result};
use crate::format::{float, Table};
use crate::seed::cell_seed;

/// Fraction of cases in a suite that must agree within three standard errors.
pub const SUITE_PASS_FRACTION: f64 = 0.95;

/// Below this many samples the standard errors themselves are unreliable.
pub const SMALL_SAMPLE_WARNING: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ProbPositive,
    Outage,
    PerfectCsiRate,
    /// One-sided: the simulated imperfect-CSI outage must not exceed the bound.
    CsiBound,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::ProbPositive, Suite::Outage, Suite::PerfectCsiRate, Suite::CsiBound];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ProbPositive => "prob_positive",
            Suite::Outage => "outage",
            Suite::PerfectCsiRate => "perfect_csi_rate",
            Suite::CsiBound => "csi_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Case {
    ProbPositive { m_db: f64, w_db: f64 },
    Outage { m_db: f64, w_db: f64, rate: f64 },
    PerfectCsiRate { m_db: f64, w_db: f64 },
    CsiBound { m_db: f64, w_db: f64, sigma2: f64 },
}

impl Case {
    fn suite(&self) -> Suite {
        match self {
            Case::ProbPositive { .. } => Suite::ProbPositive,
            Case::Outage { .. } => Suite::Outage,
            Case::PerfectCsiRate { .. } => Suite::PerfectCsiRate,
            Case::CsiBound { .. } => Suite::CsiBound,
        }
    }

    fn name(&self) -> String {
        let params = match *self {
            Case::ProbPositive { m_db, w_db } | Case::PerfectCsiRate { m_db, w_db } => {
                format!("gbar_m_db={m_db} gbar_w_db={w_db}")
            }
            Case::Outage { m_db, w_db, rate } => format!("gbar_m_db={m_db} gbar_w_db={w_db} rate={rate}"),
            Case::CsiBound { m_db, w_db, sigma2 } => format!("gbar_m_db={m_db} gbar_w_db={w_db} sigma2={sigma2}"),
        };
        format!("{}/{params}", self.suite().name())
    }

    fn run(&self, cfg: &McConfig) -> Result<CaseResult> {
        let tol = Tolerance::default();
        let (closed, mc, pass) = match *self {
            Case::ProbPositive { m_db, w_db } => {
                let pair = ChannelPair::from_db(m_db, w_db)?;
                let (c, m) = (prob_positive_secrecy(pair), estimate_prob_positive(pair, cfg));
                (c, m, m.within(c, 3.0))
            }
            Case::Outage { m_db, w_db, rate } => {
                let q = OutageQuery::new(SecrecyRate::new(rate)?, ChannelPair::from_db(m_db, w_db)?);
                let (c, m) = (outage_probability(&q), estimate_outage(&q, cfg));
                (c, m, m.within(c, 3.0))
            }
            Case::PerfectCsiRate { m_db, w_db } => {
                let pair = ChannelPair::from_db(m_db, w_db)?;
                let (c, m) = (perfect_csi_average_rate(pair, tol)?, estimate_perfect_csi_rate(pair, cfg));
                (c, m, m.within(c, 3.0))
            }
            Case::CsiBound { m_db, w_db, sigma2 } => {
                let est = EstimationModel::new(sigma2)?;
                let c = imperfect_csi_outage_bound(est);
                let m = simulate_imperfect_csi(ChannelPair::from_db(m_db, w_db)?, est, cfg).outage_rate;
                (c, m, m.estimate <= c + 3.0 * m.std_error)
            }
        };
        Ok(CaseResult {
            suite: self.suite(),
            name: self.name(),
            closed_form: closed,
            mc,
            pass,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub suite: Suite,
    pub name: String,
    pub closed_form: f64,
    pub mc: McReport,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub passed: usize,
    pub total: usize,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.passed as f64 >= SUITE_PASS_FRACTION * self.total as f64
    }
}

fn cases() -> Vec<Case> {
    let mut v = Vec::new();
    for m_db in [-5.0, 0.0, 5.0, 10.0, 20.0] {
        for w_db in [-5.0, 0.0, 10.0, 20.0] {
            v.push(Case::ProbPositive { m_db, w_db });
        }
    }
    for m_db in [-5.0, 0.0, 5.0, 10.0, 20.0] {
        for w_db in [0.0, 10.0] {
            for rate in [0.25, 1.0] {
                v.push(Case::Outage { m_db, w_db, rate });
            }
        }
    }
    for (m_db, w_db) in [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0), (20.0, 0.0)] {
        v.push(Case::PerfectCsiRate { m_db, w_db });
    }
    for m_db in [0.0, 10.0, 20.0, 30.0] {
        for sigma2 in [0.1, 1.0, 10.0] {
            v.push(Case::CsiBound {
                m_db,
                w_db: 10.0,
                sigma2,
            });
        }
    }
    v
}

/// Runs every case. Case `i` uses the seed derived from `(cfg.seed, i)`.
pub fn run_all(cfg: &McConfig) -> Result<Vec<CaseResult>> {
    cases()
        .iter()
        .enumerate()
        .map(|(i, c)| c.run(&cfg.with_seed(cell_seed(cfg.seed, i as u64))))
        .collect()
}

pub fn summarise(results: &[CaseResult]) -> Vec<SuiteSummary> {
    Suite::ALL
        .iter()
        .map(|&suite| {
            let of: Vec<&CaseResult> = results.iter().filter(|r| r.suite == suite).collect();
            SuiteSummary {
                suite,
                passed: of.iter().filter(|r| r.pass).count(),
                total: of.len(),
            }
        })
        .collect()
}

pub fn table(results: &[CaseResult]) -> Table {
    let header = ["case", "closed_form", "mc_estimate", "std_error", "z_score", "pass"];
    let mut t = Table::new(header.iter().map(|s| s.to_string()).collect());
    for r in results {
        t.push(vec![
            r.name.clone(),
            float(r.closed_form),
            float(r.mc.estimate),
            float(r.mc.std_error),
            float(r.mc.z_score(r.closed_form)),
            r.pass.to_string(),
        ]);
    }
    t
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let cfg = McConfig::new(a.mc.samples, a.mc.seed, a.mc.workers)?;
    if cfg.samples < SMALL_SAMPLE_WARNING {
        eprintln!(
            "warning: {} samples per case; standard errors are unreliable below {}",
            cfg.samples, SMALL_SAMPLE_WARNING
        );
    }
    let results = run_all(&cfg)?;
    table(&results).write_to(&a.out)?;
    let summary = summarise(&results);
    let mut failed = Vec::new();
    for s in &summary {
        let verdict = if s.ok() { "PASS" } else { "FAIL" };
        println!("{verdict} {}: {}/{} cases", s.suite.name(), s.passed, s.total);
        if !s.ok() {
            failed.push(s.suite.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}
