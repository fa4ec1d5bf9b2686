//! Removal of constant columns.
//!
//! If every string agrees on column `j`, some optimal centroid agrees as well:
//! flipping that bit of any centroid only moves every distance down by one.

use crate::bits::BinaryString;
use crate::instance::BinaryStringSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessReport {
    /// `(column, value)` for each constant column, 1-based and ascending.
    pub fixed: Vec<(usize, bool)>,
    /// Columns that differ between strings, 1-based and ascending.
    pub surviving: Vec<usize>,
    /// The instance restricted to the surviving columns.
    pub reduced: BinaryStringSet,
    n: usize,
}

impl PreprocessReport {
    pub fn original_len(&self) -> usize {
        self.n
    }

    /// Lifts a centroid of the reduced instance back to full length, filling
    /// constant columns with their common value.
    pub fn extend(&self, reduced_centroid: &BinaryString) -> BinaryString {
        assert_eq!(reduced_centroid.len(), self.surviving.len());
        let mut out = BinaryString::zeros(self.n);
        for &(j, v) in &self.fixed {
            out.set(j, v).expect("column in range");
        }
        for (i, &j) in self.surviving.iter().enumerate() {
            out.set(j, reduced_centroid.get(i + 1).expect("in range")).expect("column in range");
        }
        out
    }
}

pub fn preprocess(set: &BinaryStringSet) -> PreprocessReport {
    let n = set.n();
    let first = set.get(0);
    let mut fixed = Vec::new();
    let mut surviving = Vec::new();
    // A column is constant iff no string differs from the first one there.
    let mut differs = vec![0u64; first.words().len()];
    for s in set.strings() {
        for (d, (x, y)) in differs.iter_mut().zip(first.words().iter().zip(s.words())) {
            *d |= x ^ y;
        }
    }
    for j in 1..=n {
        let bit = (differs[(j - 1) / 64] >> ((j - 1) % 64)) & 1 == 1;
        if bit {
            surviving.push(j);
        } else {
            fixed.push((j, first.get(j).expect("in range")));
        }
    }
    let reduced = set.select_columns(&surviving);
    PreprocessReport { fixed, surviving, reduced, n }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_constant_columns() {
        let s = BinaryStringSet::parse_lines(&["1100", "1010", "1001"]).unwrap();
        let r = preprocess(&s);
        assert_eq!(r.fixed, vec![(1, true)]);
        assert_eq!(r.surviving, vec![2, 3, 4]);
        assert_eq!(r.reduced.get(0).to_string(), "100");
        assert_eq!(r.extend(&"000".parse().unwrap()).to_string(), "1000");
    }

    #[test]
    fn single_string_is_fully_fixed() {
        let s = BinaryStringSet::parse_lines(&["0110"]).unwrap();
        let r = preprocess(&s);
        assert!(r.surviving.is_empty());
        assert_eq!(r.reduced.n(), 0);
        assert_eq!(r.extend(&BinaryString::zeros(0)).to_string(), "0110");
    }
}
