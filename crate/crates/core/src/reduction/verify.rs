//! Structural verifiers for the gadget and the reduction.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BinaryString;
use crate::cost::{p_power_cost, CostValue, PowerSum, Verdict};
use crate::error::{HdcError, Result};
use crate::exact::all_optimal_centroids;
use crate::exponent::PExponent;

use super::construct::{block_sizes, build_gadget_group1, reduced_length, ReductionOutput, Role};

/// Largest string length the exhaustive gadget check accepts.
pub const GADGET_MAX_COLUMNS: usize = 24;

#[derive(Clone, Debug, Serialize)]
pub struct GadgetReport {
    pub n_hat: usize,
    pub p: PExponent,
    pub length: usize,
    pub min_cost: String,
    pub expected_cost: String,
    pub minimizers: usize,
    pub expected_minimizers: u128,
    /// Minimum equals `(2^a + 2^(a−b)) n̂^p`.
    pub cost_matches: bool,
    /// Minimizers are exactly the weight-`n̂` strings inside the ones block.
    pub set_matches: bool,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.cost_matches && self.set_matches
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn verify_gadget_lemma(n_hat: usize, p: PExponent) -> Result<GadgetReport> {
    let set = build_gadget_group1(n_hat, p)?;
    let (copies, two_b) = block_sizes(p)?;
    let length = set.n();
    if length > GADGET_MAX_COLUMNS {
        return Err(HdcError::TooManyColumns { n: length, cap: GADGET_MAX_COLUMNS });
    }
    let (min, all) = all_optimal_centroids(&set, p)?;
    let expected = PowerSum::power_term(p, n_hat as u64, (copies * two_b + copies) as u64);
    let ones_block = (two_b + 1) * n_hat;
    let in_shape = |s: &BinaryString| s.count_ones() == n_hat && s.ones_positions().iter().all(|&j| j <= ones_block);
    let expected_minimizers = binomial(ones_block as u128, n_hat as u128);
    Ok(GadgetReport {
        n_hat,
        p,
        length,
        min_cost: min.to_string(),
        expected_cost: expected.to_string(),
        minimizers: all.len(),
        expected_minimizers,
        cost_matches: min.power_sum().same_value(&expected),
        // Every minimizer has the shape and there are as many as shaped strings.
        set_matches: all.iter().all(in_shape) && all.len() as u128 == expected_minimizers,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    /// Vertex strings `s_i` and edge strings `t_j^z` sharing exactly one 1 with the centroid.
    pub covered_once: usize,
    pub checked: usize,
    /// Pairs `(s_i, r_i)` and `(t_j^z, w_j^z)` whose summed cost is `2(2n̂)^p`.
    pub pair_cost_ok: usize,
    pub pairs: usize,
    /// Total cost equals the budget.
    pub cost_equals_budget: bool,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.covered_once == self.checked && self.pair_cost_ok == self.pairs && self.cost_equals_budget
    }
}

/// Checks the cover-exactly-once and pair-cost properties of a centroid.
pub fn check_cover(out: &ReductionOutput, centroid: &BinaryString) -> Result<CoverReport> {
    let set = &out.instance.set;
    let p = out.instance.p;
    let d = set.distances(centroid)?;
    let pair_target = PowerSum::power_term(p, 2 * out.n_hat as u64, 2u64);
    let (mut covered_once, mut checked, mut pair_cost_ok, mut pairs) = (0, 0, 0, 0);
    for (i, role) in out.roles.iter().enumerate() {
        let partner = match *role {
            Role::VertexS(v) => Role::VertexR(v),
            Role::EdgeT(j, z) => Role::EdgeW(j, z),
            _ => continue,
        };
        checked += 1;
        if set.get(i).common_ones(centroid)? == 1 {
            covered_once += 1;
        }
        let k = out.roles.iter().position(|r| *r == partner).expect("every s/t string has its partner");
        pairs += 1;
        let sum = CostValue::from_distances(&[d[i], d[k]], p);
        if sum.power_sum().same_value(&pair_target) {
            pair_cost_ok += 1;
        }
    }
    let cost = CostValue::from_distances(&d, p);
    Ok(CoverReport {
        covered_once,
        checked,
        pair_cost_ok,
        pairs,
        cost_equals_budget: cost.power_sum().same_value(out.instance.budget.power_budget()),
    })
}

#[derive(Clone, Debug)]
pub struct StructuredReport {
    pub candidates: u64,
    pub min_cost: CostValue,
    /// First minimizer in candidate order.
    pub argmin: BinaryString,
    /// `min_cost ≤ budget`.
    pub verdict: Verdict,
}

/// Largest `n̂` the structured enumeration accepts (`3^n̂` candidates).
pub const STRUCTURED_MAX_NHAT: usize = 16;

/// Minimum cost over centroids with exactly one 1 per triple and zeros
/// elsewhere. Only a complete search under the cover-exactly-once lemma.
pub fn structured_minimum(out: &ReductionOutput) -> Result<StructuredReport> {
    let n_hat = out.n_hat;
    if n_hat > STRUCTURED_MAX_NHAT {
        return Err(HdcError::InvalidArgument(format!(
            "structured enumeration supports n_hat ≤ {STRUCTURED_MAX_NHAT}, got {n_hat}"
        )));
    }
    let p = out.instance.p;
    let len = reduced_length(n_hat, p, out.distinct)?;
    let total = 3u64.pow(n_hat as u32);
    let build = |mut idx: u64| {
        let mut bits = vec![false; len];
        for t in (0..n_hat).rev() {
            bits[3 * t + (idx % 3) as usize] = true;
            idx /= 3;
        }
        BinaryString::from_bits(bits)
    };
    let set = &out.instance.set;
    let pick = |a: (CostValue, u64), b: (CostValue, u64)| {
        let a_le = a.0.compare(&b.0) == Verdict::Below;
        let b_le = b.0.compare(&a.0) == Verdict::Below;
        match (a_le, b_le) {
            (true, true) => if a.1 <= b.1 { a } else { b },
            (true, false) => a,
            (false, true) => b,
            (false, false) => if a.0.to_f64() <= b.0.to_f64() { a } else { b },
        }
    };
    let (min_cost, idx) = (0..total)
        .into_par_iter()
        .map(|i| (p_power_cost(&build(i), set, p).expect("lengths match"), i))
        .reduce_with(pick)
        .expect("at least one candidate");
    let verdict = min_cost.power_sum().compare(out.instance.budget.power_budget());
    Ok(StructuredReport { candidates: total, min_cost, argmin: build(idx), verdict })
}
