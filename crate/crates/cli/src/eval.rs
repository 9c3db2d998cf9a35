//! `eval`: one quantity at one operating point.

use serde_json::{json, Map, Value};

use secrecy_core::monte_carlo::{
    estimate_outage, estimate_perfect_csi_rate, estimate_prob_positive, simulate_imperfect_csi,
};
use secrecy_core::secrecy::{
    average_secrecy_rate_no_csi, epsilon_outage_capacity, gaussian_wiretap_capacity, imperfect_csi_outage_bound,
    optimal_target_rate, outage_probability, perfect_csi_average_rate, prob_positive_from_geometry,
    prob_positive_secrecy, threshold_for_target_probability, underestimate_probability,
};
use secrecy_core::{from_db, ChannelPair, EstimationModel, Geometry, McConfig, OutageQuery, SecrecyRate, Tolerance};

use crate::args::{EvalArgs, EvalQuantity};
use crate::error::{CliError, Result};

struct Inputs<'a> {
    args: &'a EvalArgs,
    used: Map<String, Value>,
}

impl<'a> Inputs<'a> {
    fn take(&mut self, name: &str, v: Option<f64>) -> Result<f64> {
        let v = v.ok_or_else(|| CliError::usage(format!("--{} is required", name.replace('_', "-"))))?;
        self.used.insert(name.to_string(), json!(v));
        Ok(v)
    }

    fn pair(&mut self) -> Result<ChannelPair> {
        let m = self.take("gbar_m_db", self.args.gbar_m_db)?;
        let w = self.take("gbar_w_db", self.args.gbar_w_db)?;
        Ok(ChannelPair::from_db(m, w)?)
    }

    fn rate(&mut self) -> Result<SecrecyRate> {
        Ok(SecrecyRate::new(self.take("rate", self.args.rate)?)?)
    }

    fn estimation(&mut self) -> Result<EstimationModel> {
        Ok(EstimationModel::new(self.take("sigma2", self.args.sigma2)?)?)
    }

    fn mc(&mut self) -> Result<McConfig> {
        let m = &self.args.mc;
        self.used.insert("samples".into(), json!(m.samples));
        self.used.insert("seed".into(), json!(m.seed));
        self.used.insert("workers".into(), json!(m.workers));
        Ok(McConfig::new(m.samples, m.seed, m.workers)?)
    }
}

fn quantity_name(q: EvalQuantity) -> String {
    clap::ValueEnum::to_possible_value(&q)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

/// Builds the `{quantity, inputs, value}` record.
pub fn evaluate(args: &EvalArgs) -> Result<Value> {
    let mut inp = Inputs {
        args,
        used: Map::new(),
    };
    let tol = Tolerance::default();
    let value = match args.quantity {
        EvalQuantity::ProbPositive => json!(prob_positive_secrecy(inp.pair()?)),
        EvalQuantity::ProbPositiveGeometry => {
            let dm = inp.take("dm", args.dm)?;
            let dw = inp.take("dw", args.dw)?;
            let alpha = inp.take("alpha", args.alpha)?;
            json!(prob_positive_from_geometry(&Geometry::new(dm, dw, alpha, 1.0)?))
        }
        EvalQuantity::Threshold => {
            let t = threshold_for_target_probability(inp.take("p0", args.p0)?)?;
            let mut v = json!({ "snr_ratio": t.snr_ratio() });
            if let Some(alpha) = args.alpha {
                inp.used.insert("alpha".into(), json!(alpha));
                v["distance_ratio"] = json!(t.distance_ratio(alpha)?);
            }
            v
        }
        EvalQuantity::Outage => {
            let q = OutageQuery::new(inp.rate()?, inp.pair()?);
            json!(outage_probability(&q))
        }
        EvalQuantity::OutageCapacity => {
            let eps = inp.take("epsilon", args.epsilon)?;
            json!(epsilon_outage_capacity(eps, inp.pair()?, tol)?.value())
        }
        EvalQuantity::AvgRate => {
            let r = inp.rate()?;
            json!(average_secrecy_rate_no_csi(r, inp.pair()?))
        }
        EvalQuantity::OptimalRate => {
            let (r, v) = optimal_target_rate(inp.pair()?, tol);
            json!({ "rate": r.value(), "avg_rate": v })
        }
        EvalQuantity::PerfectCsiRate => json!(perfect_csi_average_rate(inp.pair()?, tol)?),
        EvalQuantity::Gaussian => {
            let m = inp.take("gbar_m_db", args.gbar_m_db)?;
            let w = inp.take("gbar_w_db", args.gbar_w_db)?;
            json!(gaussian_wiretap_capacity(from_db(m), from_db(w)).value())
        }
        EvalQuantity::CsiBound => json!(imperfect_csi_outage_bound(inp.estimation()?)),
        EvalQuantity::Underestimate => {
            let g = from_db(inp.take("gamma_w_db", args.gamma_w_db)?);
            let gbar = from_db(inp.take("gbar_w_db", args.gbar_w_db)?);
            json!(underestimate_probability(g, gbar, inp.estimation()?)?)
        }
        EvalQuantity::McProbPositive => {
            let pair = inp.pair()?;
            json!(estimate_prob_positive(pair, &inp.mc()?))
        }
        EvalQuantity::McOutage => {
            let q = OutageQuery::new(inp.rate()?, inp.pair()?);
            json!(estimate_outage(&q, &inp.mc()?))
        }
        EvalQuantity::McPerfectCsiRate => {
            let pair = inp.pair()?;
            json!(estimate_perfect_csi_rate(pair, &inp.mc()?))
        }
        EvalQuantity::ImperfectCsi => {
            let pair = inp.pair()?;
            let est = inp.estimation()?;
            json!(simulate_imperfect_csi(pair, est, &inp.mc()?))
        }
    };
    Ok(json!({
        "quantity": quantity_name(args.quantity),
        "inputs": Value::Object(inp.used),
        "value": value,
    }))
}
