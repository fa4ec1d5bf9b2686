//! Bounded search around the input strings.
//!
//! If `s*` has cost `C ≤ B`, averaging gives an input string with
//! `m · hd(s_i, s*)^p ≤ C`, so every feasible centroid lies within radius
//! `r = max{r : m · r^p ≤ B}` of some input string. Enumerating all those
//! balls therefore finds every feasible centroid, in particular all optima.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bits::{hamming_unchecked, BinaryString};
use crate::cost::{CostBudget, Verdict};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult, Decision};
use crate::scalar::{with_scalar, BudgetJudge, CostScalar, PowerTable};

use super::preprocess::preprocess;
use super::track::Tracker;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchProgress {
    pub strings_done: usize,
    pub strings_total: usize,
    pub candidates: u64,
}

#[derive(Clone, Copy, Default)]
pub struct SearchTreeConfig<'a> {
    /// Stop at the first feasible candidate (radius, then input order, then
    /// lexicographic flip set) instead of returning the best one.
    pub first_hit: bool,
    /// Called after each input string's ball is exhausted (full search only).
    pub progress: Option<&'a (dyn Fn(SearchProgress) + Sync)>,
}

/// Largest `r ≤ max` with `m · r^p ≤ budget`. Undecidable steps are admitted,
/// which can only enlarge the search.
pub fn search_radius(budget: &CostBudget, m: usize, max: usize) -> usize {
    let mut r = 0;
    while r < max && budget.admits_scaled_power(r as u64 + 1, m as u64) != Verdict::Above {
        r += 1;
    }
    r
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
/// Returns early when `f` returns `false`.
pub(crate) fn for_each_combination<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn flip(base: &BinaryString, cols: &[usize]) -> BinaryString {
    let one_based: Vec<usize> = cols.iter().map(|c| c + 1).collect();
    base.flipped(&one_based)
}

fn search_generic<T: CostScalar>(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    config: &SearchTreeConfig<'_>,
) -> Result<Decision> {
    let report = preprocess(set);
    let c = report.surviving.len();
    if budget.admits_integer(c as u64) == Verdict::Above {
        return Ok(Decision::Infeasible);
    }
    let reduced = &report.reduced;
    let m = reduced.m();
    let r = search_radius(budget, m, c);
    let table = PowerTable::<T>::new(p, c, m).expect("scalar chosen to fit");
    let distances = |cand: &BinaryString| reduced.strings().iter().map(|s| hamming_unchecked(cand, s)).collect::<Vec<_>>();
    let cost_of = |cand: &BinaryString| table.sum(distances(cand));
    let lift = |cand: &BinaryString| CentroidResult::evaluate(report.extend(cand), set, p, Algorithm::Searchtree);
    let checked = AtomicU64::new(0);
    let done = AtomicUsize::new(0);
    let report_progress = || {
        if let Some(cb) = config.progress {
            cb(SearchProgress {
                strings_done: done.fetch_add(1, Ordering::Relaxed) + 1,
                strings_total: m,
                candidates: checked.load(Ordering::Relaxed),
            });
        }
    };

    if config.first_hit {
        let judge = BudgetJudge::<T>::new(budget);
        let mut hit: Option<BinaryString> = None;
        let mut unsure: Option<BinaryString> = None;
        'outer: for rho in 0..=r {
            for s in reduced.strings() {
                let finished = for_each_combination(c, rho, |cols| {
                    let cand = flip(s, cols);
                    checked.fetch_add(1, Ordering::Relaxed);
                    match judge.judge(&cost_of(&cand), || distances(&cand)) {
                        Verdict::Below => {
                            hit = Some(cand);
                            false
                        }
                        Verdict::Indeterminate => {
                            unsure.get_or_insert(cand);
                            true
                        }
                        Verdict::Above => true,
                    }
                });
                if !finished {
                    break 'outer;
                }
            }
        }
        return Ok(match (hit, unsure) {
            (Some(h), _) => Decision::Feasible(lift(&h)?),
            (None, Some(u)) => Decision::Indeterminate(lift(&u)?),
            (None, None) => Decision::Infeasible,
        });
    }

    let best = reduced
        .strings()
        .par_iter()
        .map(|s| {
            let mut best = Tracker::new(p);
            for rho in 0..=r {
                for_each_combination(c, rho, |cols| {
                    let cand = flip(s, cols);
                    best.offer(cost_of(&cand), cand, &distances);
                    true
                });
            }
            checked.fetch_add(
                (0..=r).map(|rho| binomial(c, rho)).fold(0u64, u64::saturating_add),
                Ordering::Relaxed,
            );
            report_progress();
            best
        })
        .reduce(|| Tracker::new(p), |a, b| a.merge(b, &distances))
        .into_best();
    let best = best.map(|(_, cand)| lift(&cand)).transpose()?;
    Ok(Decision::from_best(best, budget))
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Decides feasibility by enumerating Hamming balls around the input strings.
/// Returns the lexicographically smallest optimal centroid when feasible.
pub fn solve_searchtree(set: &BinaryStringSet, p: PExponent, budget: &CostBudget) -> Result<Decision> {
    solve_searchtree_with(set, p, budget, &SearchTreeConfig::default())
}

pub fn solve_searchtree_with(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    config: &SearchTreeConfig<'_>,
) -> Result<Decision> {
    if budget.exponent() != p {
        return Err(HdcError::InvalidBudget("budget exponent differs from p".into()));
    }
    with_scalar!(p, set.n(), set.m(), search_generic(set, p, budget, config))
}
