//! Exhaustive search over all `2^n` candidates. Used as the oracle for every
//! other solver.

use rayon::prelude::*;

use crate::bits::BinaryString;
use crate::cost::{CostValue, Verdict};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult};
use crate::scalar::{with_scalar, CostScalar, PowerTable};

use super::track::Tracker;

pub const DEFAULT_BRUTEFORCE_CAP: usize = 24;

/// Candidates per parallel work item.
const CHUNK_BITS: u32 = 14;

fn packed_rows(set: &BinaryStringSet, cap: usize) -> Result<Vec<u64>> {
    let n = set.n();
    if n > cap.min(63) {
        return Err(HdcError::TooManyColumns { n, cap: cap.min(63) });
    }
    Ok(set.strings().iter().map(|s| s.to_u64_msb().expect("n <= 63")).collect())
}

#[inline]
fn cost_of<T: CostScalar>(candidate: u64, rows: &[u64], table: &PowerTable<T>) -> T {
    rows.iter()
        .fold(T::zero(), |acc, r| acc + table.get((candidate ^ r).count_ones() as usize).clone())
}

/// Lexicographically smallest minimizer among candidates accepted by `keep`,
/// as `(cost, candidate)`.
pub(crate) fn best_candidate<T, F>(
    rows: &[u64],
    n: usize,
    table: &PowerTable<T>,
    keep: F,
) -> Option<(T, u64)>
where
    T: CostScalar,
    F: Fn(u64) -> bool + Sync,
{
    let total: u64 = 1 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n as u32);
    let chunks = total / chunk;
    let p = table.exponent();
    let distances = |c: &u64| rows.iter().map(|r| (c ^ r).count_ones() as usize).collect::<Vec<_>>();
    (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut best = Tracker::new(p);
            for c in ci * chunk..(ci + 1) * chunk {
                if keep(c) {
                    best.offer(cost_of(c, rows, table), c, &distances);
                }
            }
            best
        })
        .reduce(|| Tracker::new(p), |a, b| a.merge(b, &distances))
        .into_best()
}

fn solve_generic<T: CostScalar>(set: &BinaryStringSet, p: PExponent, cap: usize) -> Result<CentroidResult> {
    let rows = packed_rows(set, cap)?;
    let n = set.n();
    let table = PowerTable::<T>::new(p, n, set.m()).expect("scalar chosen to fit");
    let (_, best) = best_candidate(&rows, n, &table, |_| true).expect("at least one candidate");
    CentroidResult::evaluate(BinaryString::from_u64_msb(best, n), set, p, Algorithm::Bruteforce)
}

/// Globally optimal centroid; ties go to the lexicographically smallest string.
pub fn solve_bruteforce(set: &BinaryStringSet, p: PExponent) -> Result<CentroidResult> {
    solve_bruteforce_with_cap(set, p, DEFAULT_BRUTEFORCE_CAP)
}

pub fn solve_bruteforce_with_cap(set: &BinaryStringSet, p: PExponent, cap: usize) -> Result<CentroidResult> {
    with_scalar!(p, set.n(), set.m(), solve_generic(set, p, cap))
}

/// Same search with an explicit accumulator type.
pub fn solve_bruteforce_as<T: CostScalar>(set: &BinaryStringSet, p: PExponent, cap: usize) -> Result<CentroidResult> {
    if PowerTable::<T>::new(p, set.n(), set.m()).is_none() {
        return Err(HdcError::InvalidArgument(format!("scalar cannot represent distances^{p}")));
    }
    solve_generic::<T>(set, p, cap)
}

fn committee_generic<T: CostScalar>(
    set: &BinaryStringSet,
    p: PExponent,
    t: usize,
    cap: usize,
) -> Result<CentroidResult> {
    let rows = packed_rows(set, cap)?;
    let n = set.n();
    if t > n {
        return Err(HdcError::InvalidArgument(format!("t = {t} exceeds string length {n}")));
    }
    let table = PowerTable::<T>::new(p, n, set.m()).expect("scalar chosen to fit");
    let (_, best) = best_candidate(&rows, n, &table, |c| c.count_ones() as usize == t).expect("some string has t ones");
    CentroidResult::evaluate(BinaryString::from_u64_msb(best, n), set, p, Algorithm::CommitteeBruteforce)
}

/// Optimal centroid among strings with exactly `t` ones.
pub fn solve_committee_bruteforce(set: &BinaryStringSet, p: PExponent, t: usize) -> Result<CentroidResult> {
    solve_committee_bruteforce_with_cap(set, p, t, DEFAULT_BRUTEFORCE_CAP)
}

pub fn solve_committee_bruteforce_with_cap(
    set: &BinaryStringSet,
    p: PExponent,
    t: usize,
    cap: usize,
) -> Result<CentroidResult> {
    with_scalar!(p, set.n(), set.m(), committee_generic(set, p, t, cap))
}

fn all_optimal_generic<T: CostScalar>(
    set: &BinaryStringSet,
    p: PExponent,
    cap: usize,
) -> Result<(CostValue, Vec<BinaryString>)> {
    let rows = packed_rows(set, cap)?;
    let n = set.n();
    let table = PowerTable::<T>::new(p, n, set.m()).expect("scalar chosen to fit");
    let (best_cost, best) = best_candidate(&rows, n, &table, |_| true).expect("at least one candidate");
    let best_string = BinaryString::from_u64_msb(best, n);
    let optimum = CostValue::from_distances(&set.distances(&best_string)?, p);
    let slack = T::RELATIVE_SLACK;
    let limit = best_cost.to_f64() * (1.0 + slack) + slack;
    let near: Vec<u64> = (0..(1u64 << n))
        .into_par_iter()
        .filter(|&c| {
            let cost = cost_of(c, &rows, &table);
            if T::EXACT {
                cost == best_cost
            } else {
                cost.to_f64() <= limit
            }
        })
        .collect();
    let mut out = Vec::new();
    for c in near {
        let s = BinaryString::from_u64_msb(c, n);
        let cost = CostValue::from_distances(&set.distances(&s)?, p);
        if T::EXACT || (cost.compare(&optimum) == Verdict::Below && optimum.compare(&cost) == Verdict::Below) {
            out.push(s);
        }
    }
    Ok((optimum, out))
}

/// The optimal cost and every centroid attaining it, in lexicographic order.
pub fn all_optimal_centroids(set: &BinaryStringSet, p: PExponent) -> Result<(CostValue, Vec<BinaryString>)> {
    with_scalar!(p, set.n(), set.m(), all_optimal_generic(set, p, DEFAULT_BRUTEFORCE_CAP))
}
