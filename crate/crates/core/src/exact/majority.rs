//! The `p = 1` case: cost separates by column, so a column-wise majority vote
//! is optimal. Ties take 0, which gives the lexicographically smallest optimum.

use crate::bits::BinaryString;
use crate::error::Result;
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult};

pub fn solve_majority(set: &BinaryStringSet) -> Result<CentroidResult> {
    let m = set.m();
    let centroid = BinaryString::from_bits((1..=set.n()).map(|j| {
        let ones = set.column(j).iter().filter(|&&b| b).count();
        2 * ones > m
    }));
    CentroidResult::evaluate(centroid, set, PExponent::one(), Algorithm::Majority)
}
