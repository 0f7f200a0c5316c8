use serde::{Deserialize, Serialize};

use super::catalogue::CheckId;
use super::concave::Concave;

/// Default tolerance on slack.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses unmet; excluded from pass/fail accounting.
    Vacuous,
}

/// How the slack was measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `lambda_min(R - L) / max(1, ‖R‖)`; lhs and rhs hold `‖L‖`, `‖R‖`.
    Loewner,
    /// `(rhs - lhs) / max(1, |rhs|)`.
    Scalar,
    /// Minimum of the scalar slack over a list of indices `j`.
    Indexed,
    /// Two-sided agreement at the boundary of an equivalence.
    Boundary,
    None,
}

/// Parameters actually used for one evaluation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UsedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Concave>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: CheckId,
    /// Which inequality of a chain this is; `main` for the headline statement.
    pub link: String,
    pub hypotheses_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub form: Form,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub slack: f64,
    pub verdict: Verdict,
    pub params: UsedParams,
    pub witness: String,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn is_vacuous(&self) -> bool {
        self.verdict == Verdict::Vacuous
    }
}

/// `(rhs - lhs) / max(1, |rhs|)`.
pub fn scalar_slack(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / rhs.abs().max(1.0)
}

pub fn verdict_for(slack: f64, tol: f64) -> Verdict {
    if slack >= -tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}
