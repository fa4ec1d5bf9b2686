//! Factor-2 approximation: the best input string.
//!
//! For the optimum `s*` and any input string `s_i`, the triangle inequality and
//! `(x + y)^p ≤ 2^(p−1)(x^p + y^p)` bound the cost of the best input string by
//! `2^p` times the optimal `p`-power cost, i.e. a factor 2 in the norm.

use crate::cost::{CostValue, Verdict};
use crate::error::Result;
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult};

/// The input string with the smallest cost; ties go to the earliest one.
pub fn approx_factor2(set: &BinaryStringSet, p: PExponent) -> Result<CentroidResult> {
    let mut best: Option<CentroidResult> = None;
    for s in set.strings() {
        let cand = CentroidResult::evaluate(s.clone(), set, p, Algorithm::Approx2)?;
        let better = match &best {
            None => true,
            // Strictly smaller: cand ≤ best but not best ≤ cand.
            Some(b) => cand.cost.compare(&b.cost) == Verdict::Below && b.cost.compare(&cand.cost) != Verdict::Below,
        };
        if better {
            best = Some(cand);
        }
    }
    Ok(best.expect("string sets are non-empty"))
}

/// Norm ratio `(approx / opt)^(1/p)`; 1 when both costs are zero.
pub fn norm_ratio(approx: &CostValue, opt: &CostValue) -> f64 {
    let (a, o) = (approx.to_f64(), opt.to_f64());
    if o == 0.0 {
        return if a == 0.0 { 1.0 } else { f64::INFINITY };
    }
    (a / o).powf(1.0 / approx.exponent().as_f64())
}
