//! Column types: columns that agree on every string are interchangeable, so a
//! centroid is determined (up to cost) by how many ones it puts in each class.

use serde::Serialize;

use crate::bits::BinaryString;
use crate::cost::CostValue;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeProfile {
    /// Distinct column patterns, each of length `m`, in order of first appearance.
    pub types: Vec<BinaryString>,
    /// `e(j)`: number of columns of type `j`.
    pub counts: Vec<usize>,
    /// Type index of every column.
    pub column_map: Vec<usize>,
    /// `w_i`: ones of string `i`.
    pub ones_per_string: Vec<usize>,
}

pub fn extract_types(set: &BinaryStringSet) -> TypeProfile {
    let mut types: Vec<BinaryString> = Vec::new();
    let mut counts = Vec::new();
    let mut column_map = Vec::with_capacity(set.n());
    let mut index = std::collections::HashMap::new();
    for j in 1..=set.n() {
        let pattern = BinaryString::from_bits(set.column(j));
        let t = *index.entry(pattern.clone()).or_insert_with(|| {
            types.push(pattern);
            counts.push(0);
            types.len() - 1
        });
        counts[t] += 1;
        column_map.push(t);
    }
    let ones_per_string = set.strings().iter().map(BinaryString::count_ones).collect();
    TypeProfile { types, counts, column_map, ones_per_string }
}

impl TypeProfile {
    /// Number of types `n'`.
    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    /// Number of strings `m`.
    pub fn m(&self) -> usize {
        self.ones_per_string.len()
    }

    /// String length `n`.
    pub fn n(&self) -> usize {
        self.column_map.len()
    }

    /// `s_i[j]` for string `i` and type `j`, both 0-based.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.types[j].get(i + 1).expect("string index in range")
    }

    /// `1 − 2 s_i[j]`: how one more one in type `j` moves the distance to string `i`.
    pub fn coefficient(&self, i: usize, j: usize) -> i64 {
        if self.bit(i, j) {
            -1
        } else {
            1
        }
    }

    pub fn check_bounds(&self, x: &[usize]) -> Result<()> {
        if x.len() != self.num_types() {
            return Err(HdcError::BoundViolation(format!(
                "expected {} type counts, got {}",
                self.num_types(),
                x.len()
            )));
        }
        for (j, (&xj, &e)) in x.iter().zip(&self.counts).enumerate() {
            if xj > e {
                return Err(HdcError::BoundViolation(format!("x[{j}] = {xj} exceeds e({j}) = {e}")));
            }
        }
        Ok(())
    }

    /// `hd(s_i, s*(x)) = w_i + Σ_j x[j](1 − 2 s_i[j])` for every string.
    pub fn distances(&self, x: &[usize]) -> Result<Vec<usize>> {
        self.check_bounds(x)?;
        Ok(self.distances_unchecked(x))
    }

    pub(crate) fn distances_unchecked(&self, x: &[usize]) -> Vec<usize> {
        (0..self.m())
            .map(|i| {
                let d = self.ones_per_string[i] as i64
                    + x.iter().enumerate().map(|(j, &xj)| xj as i64 * self.coefficient(i, j)).sum::<i64>();
                usize::try_from(d).expect("distance is non-negative inside the box")
            })
            .collect()
    }

    /// Columns of each type class, 1-based and ascending.
    pub fn class_columns(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_types()];
        for (col, &t) in self.column_map.iter().enumerate() {
            out[t].push(col + 1);
        }
        out
    }
}

/// Per-type one counts together with their objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSolution {
    pub x: Vec<usize>,
    pub objective: CostValue,
}

impl TypeSolution {
    pub fn new(x: Vec<usize>, profile: &TypeProfile, p: PExponent) -> Result<Self> {
        let objective = CostValue::from_distances(&profile.distances(&x)?, p);
        Ok(TypeSolution { x, objective })
    }
}

/// The string with `x[j]` ones in type class `j`, placed in the rightmost
/// columns of each class. Of all strings with these counts this one is
/// lexicographically smallest.
pub fn decode_centroid(x: &[usize], profile: &TypeProfile) -> Result<BinaryString> {
    profile.check_bounds(x)?;
    let mut out = BinaryString::zeros(profile.n());
    for (cols, &k) in profile.class_columns().iter().zip(x) {
        for &c in &cols[cols.len() - k..] {
            out.set(c, true)?;
        }
    }
    Ok(out)
}
