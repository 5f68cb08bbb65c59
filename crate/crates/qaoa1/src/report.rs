//! Solver run reports with a stable, regression-friendly JSON rendering.
//!
//! All floats are written with 17 significant digits (`{:.16e}`), enough
//! to round-trip `f64` exactly, so two runs with identical inputs produce
//! byte-identical reports.

use crate::ising::WeightClass;
use crate::spectral::SamplingPlan;

/// The sampling-plan facts a report echoes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanSummary {
    pub omega_max: f64,
    pub delta_gamma: f64,
    pub period: Option<f64>,
}

impl From<&SamplingPlan> for PlanSummary {
    fn from(plan: &SamplingPlan) -> Self {
        PlanSummary {
            omega_max: plan.omega_max,
            delta_gamma: plan.delta_gamma,
            period: plan.period,
        }
    }
}

/// Everything a solver or tuner run reports back.
#[derive(Debug, Clone)]
pub struct SolverReport {
    /// Vertex count of the input model.
    pub n: usize,
    /// Edge count of the input model.
    pub edge_count: usize,
    /// Weight-class label, e.g. `integer(scale=4)` or `real`.
    pub weight_class: String,
    /// Seed the run was invoked with (echoed for reproducibility).
    pub seed: u64,
    /// Top-level method name, e.g. `rqaoa`, `subdivision`.
    pub method: String,
    /// Human-readable configuration details (tuner, strategy, tolerances).
    pub configuration: String,
    /// Tuned angles (of the first reduction step for recursive solvers).
    pub gamma_star: f64,
    pub beta_star: f64,
    /// Constant-free energy of the reported outcome.
    pub energy: f64,
    /// The model constant, so `energy + constant` is the full value.
    pub constant: f64,
    /// Achieved energy over the true minimum, when exhaustive ground truth
    /// is feasible (n ≤ 24) and the minimum is negative.
    pub approximation_ratio: Option<f64>,
    /// Univariate cost evaluations across all tuning calls.
    pub evaluations: usize,
    pub wall_time_ms: f64,
    pub plan: PlanSummary,
}

/// 17-significant-digit rendering used for every float in JSON output.
pub(crate) fn json_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no NaN/Inf literals; null keeps the document parseable.
        "null".into()
    }
}

pub(crate) fn json_opt_f64(x: Option<f64>) -> String {
    match x {
        Some(v) => json_f64(v),
        None => "null".into(),
    }
}

/// Minimal string escaping for the fixed label vocabulary reports use.
pub(crate) fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical label for a weight class.
pub fn weight_class_label(wc: WeightClass) -> String {
    match wc {
        WeightClass::Integer { scale } => format!("integer(scale={scale})"),
        WeightClass::Real => "real".into(),
    }
}

impl SolverReport {
    /// Renders the report as a single JSON object (`"schema": 1`).
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(512);
        out.push_str("{\"schema\":1,\"instance\":{");
        out.push_str(&format!(
            "\"n\":{},\"edges\":{},\"weight_class\":{},\"seed\":{}",
            self.n,
            self.edge_count,
            json_string(&self.weight_class),
            self.seed
        ));
        out.push_str("},");
        out.push_str(&format!(
            "\"method\":{},\"configuration\":{},",
            json_string(&self.method),
            json_string(&self.configuration)
        ));
        out.push_str(&format!(
            "\"gamma_star\":{},\"beta_star\":{},\"energy\":{},\"constant\":{},",
            json_f64(self.gamma_star),
            json_f64(self.beta_star),
            json_f64(self.energy),
            json_f64(self.constant)
        ));
        out.push_str(&format!(
            "\"approximation_ratio\":{},\"evaluations\":{},\"wall_time_ms\":{},",
            json_opt_f64(self.approximation_ratio),
            self.evaluations,
            json_f64(self.wall_time_ms)
        ));
        out.push_str(&format!(
            "\"plan\":{{\"omega_max\":{},\"delta_gamma\":{},\"period\":{}}}}}",
            json_f64(self.plan.omega_max),
            json_f64(self.plan.delta_gamma),
            json_opt_f64(self.plan.period)
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SolverReport {
        SolverReport {
            n: 4,
            edge_count: 3,
            weight_class: "integer(scale=1)".into(),
            seed: 7,
            method: "rqaoa".into(),
            configuration: "tuner=line_search(refine)".into(),
            gamma_star: 0.25,
            beta_star: 1.5,
            energy: -3.0,
            constant: 0.5,
            approximation_ratio: Some(1.0),
            evaluations: 42,
            wall_time_ms: 1.25,
            plan: PlanSummary { omega_max: 6.0, delta_gamma: 0.34, period: None },
        }
    }

    #[test]
    fn json_is_stable_and_versioned() {
        let r = sample();
        let a = r.to_json();
        assert_eq!(a, r.to_json());
        assert!(a.starts_with("{\"schema\":1,"));
        assert!(a.contains("\"period\":null"));
        assert!(a.contains("\"gamma_star\":2.5000000000000000e-1"));
    }

    #[test]
    fn floats_have_17_significant_digits() {
        assert_eq!(json_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(json_f64(f64::NAN), "null");
        assert_eq!(json_opt_f64(None), "null");
    }

    #[test]
    fn strings_are_escaped() {
        assert_eq!(json_string("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
    }

    #[test]
    fn weight_class_labels() {
        assert_eq!(weight_class_label(WeightClass::Integer { scale: 4 }), "integer(scale=4)");
        assert_eq!(weight_class_label(WeightClass::Real), "real");
    }
}
