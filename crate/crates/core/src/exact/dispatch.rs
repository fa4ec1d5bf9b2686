//! Picks between the distance-vector DP and the search tree.
//!
//! With `k = budget^(1/p)`, the DP costs about `k^m` and the search tree about
//! `n^(k / m^(1/p))`; the DP is used when `m ≤ k^(p/(p+1)) / log2 k`.

use crate::cost::CostBudget;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, Decision};

use super::bruteforce::{solve_bruteforce, DEFAULT_BRUTEFORCE_CAP};
use super::dp::{solve_dp, DpConfig};
use super::searchtree::solve_searchtree;

/// `k^(p/(p+1)) / log2 k`, or `None` when `k ≤ 1`.
pub fn dispatch_threshold(k: f64, p: PExponent) -> Option<f64> {
    if k <= 1.0 || !k.is_finite() {
        return None;
    }
    let p = p.as_f64();
    Some(k.powf(p / (p + 1.0)) / k.log2())
}

/// The solver the dispatcher runs for `m` strings of length `n`.
pub fn dispatch_choice(m: usize, n: usize, p: PExponent, budget: &CostBudget) -> Algorithm {
    match dispatch_threshold(budget.norm_f64(), p) {
        None if n <= DEFAULT_BRUTEFORCE_CAP => Algorithm::Bruteforce,
        None => Algorithm::Searchtree,
        Some(t) if (m as f64) <= t => Algorithm::Dp,
        Some(_) => Algorithm::Searchtree,
    }
}

pub fn solve_dispatch(set: &BinaryStringSet, p: PExponent, budget: &CostBudget) -> Result<Decision> {
    solve_dispatch_with(set, p, budget, &DpConfig::default())
}

/// Runs the chosen solver. A DP that would exceed the memory cap falls back
/// to the search tree.
pub fn solve_dispatch_with(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    config: &DpConfig,
) -> Result<Decision> {
    match dispatch_choice(set.m(), set.n(), p, budget) {
        Algorithm::Bruteforce => {
            let best = solve_bruteforce(set, p)?;
            Ok(Decision::from_best(Some(best), budget))
        }
        Algorithm::Dp => match solve_dp(set, p, budget, config) {
            Err(HdcError::TableTooLarge { .. }) => solve_searchtree(set, p, budget),
            other => other,
        },
        _ => solve_searchtree(set, p, budget),
    }
}
