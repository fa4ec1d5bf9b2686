use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bits::BinaryString;
use crate::cost::{compare_cost, CostBudget, CostValue, Verdict};
use crate::error::Result;
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Bruteforce,
    Dp,
    Searchtree,
    TypedBb,
    Approx2,
    Committee,
    CommitteeBruteforce,
    Majority,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Bruteforce => "bruteforce",
            Algorithm::Dp => "dp",
            Algorithm::Searchtree => "searchtree",
            Algorithm::TypedBb => "typed-bb",
            Algorithm::Approx2 => "approx2",
            Algorithm::Committee => "committee",
            Algorithm::CommitteeBruteforce => "committee-bruteforce",
            Algorithm::Majority => "majority",
        };
        f.write_str(s)
    }
}

/// A centroid together with its distance vector and exact cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidResult {
    pub centroid: BinaryString,
    pub cost: CostValue,
    pub algorithm: Algorithm,
    pub distance_vector: Vec<usize>,
}

impl CentroidResult {
    /// Recomputes distances and cost from the inputs.
    pub fn evaluate(centroid: BinaryString, set: &BinaryStringSet, p: PExponent, algorithm: Algorithm) -> Result<Self> {
        let distance_vector = set.distances(&centroid)?;
        let cost = CostValue::from_distances(&distance_vector, p);
        Ok(CentroidResult { centroid, cost, algorithm, distance_vector })
    }

    pub fn verdict(&self, budget: &CostBudget) -> Verdict {
        compare_cost(&self.cost, budget)
    }

    /// JSON object `{centroid, cost, norm, algorithm, distance_vector, runtime_ms}`
    /// plus `cost_exact` (canonical text) and `cost_error`.
    pub fn to_json(&self, runtime_ms: f64) -> serde_json::Value {
        let cost = match self.cost.exact_part().and_then(|c| u64::try_from(c).ok()) {
            Some(c) => json!(c),
            None => json!(self.cost.to_f64()),
        };
        let error = if self.cost.is_exact() { 0.0 } else { self.cost.approx_part().1 };
        json!({
            "centroid": self.centroid.to_string(),
            "cost": cost,
            "cost_exact": self.cost.to_string(),
            "cost_error": error,
            "norm": self.cost.norm(),
            "algorithm": self.algorithm,
            "distance_vector": self.distance_vector,
            "runtime_ms": runtime_ms,
        })
    }
}

/// Answer of a budgeted decision solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Feasible(CentroidResult),
    Infeasible,
    /// The best candidate found sits within the numeric tolerance of the budget.
    Indeterminate(CentroidResult),
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }

    pub fn result(&self) -> Option<&CentroidResult> {
        match self {
            Decision::Feasible(r) | Decision::Indeterminate(r) => Some(r),
            Decision::Infeasible => None,
        }
    }

    pub fn into_result(self) -> Option<CentroidResult> {
        match self {
            Decision::Feasible(r) | Decision::Indeterminate(r) => Some(r),
            Decision::Infeasible => None,
        }
    }

    /// Classifies an optimum (or `None` when nothing was found) against a budget.
    pub fn from_best(best: Option<CentroidResult>, budget: &CostBudget) -> Decision {
        match best {
            None => Decision::Infeasible,
            Some(r) => match r.verdict(budget) {
                Verdict::Below => Decision::Feasible(r),
                Verdict::Above => Decision::Infeasible,
                Verdict::Indeterminate => Decision::Indeterminate(r),
            },
        }
    }
}
