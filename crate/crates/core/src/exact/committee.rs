//! Centroids restricted to exactly `t` ones (approval committees of size `t`).

use crate::cost::CostBudget;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::Decision;
use crate::scalar::{with_scalar, CostScalar};

use super::bruteforce::{solve_committee_bruteforce, DEFAULT_BRUTEFORCE_CAP};
use super::dp::{max_single_distance, table_optimum, DpConfig, DpTable};

fn committee_generic<T: CostScalar>(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    t: usize,
    config: &DpConfig,
) -> Result<Decision> {
    // The input strings need not have t ones, so the D - 1 shortcut of the
    // plain DP does not apply here.
    let cap = max_single_distance(budget, set.n());
    match DpTable::build_with_ones(set, cap, t, config) {
        Ok(table) => Ok(Decision::from_best(table_optimum::<T>(table, set, p)?, budget)),
        Err(HdcError::TableTooLarge { .. }) if set.n() <= DEFAULT_BRUTEFORCE_CAP => {
            let best = solve_committee_bruteforce(set, p, t)?;
            Ok(Decision::from_best(Some(best), budget))
        }
        Err(e) => Err(e),
    }
}

/// Best centroid with exactly `t` ones, judged against `budget`. Uses the DP
/// with a ones counter and falls back to constrained brute force when the
/// table would exceed the memory cap.
pub fn solve_committee(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    t: usize,
    config: &DpConfig,
) -> Result<Decision> {
    if t > set.n() {
        return Err(HdcError::InvalidArgument(format!("t = {t} exceeds string length {}", set.n())));
    }
    if budget.exponent() != p {
        return Err(HdcError::InvalidBudget("budget exponent differs from p".into()));
    }
    let cap = max_single_distance(budget, set.n());
    with_scalar!(p, cap, set.m(), committee_generic(set, p, budget, t, config))
}
