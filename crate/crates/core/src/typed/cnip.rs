//! Combinatorial n-fold IP model over the type counts, for export to external
//! solvers.
//!
//! Variables are ordered `x_1..x_{n'}`, `y_1..y_m`, `z`. Row `i < m` reads
//! `Σ_j x_j (1 − 2 s_i[j]) − y_i = −w_i`; the last row is `Σ x + Σ y + z = 0`
//! with `z` a free slack. The objective is `Σ_i y_i^p`.

use serde::Serialize;
use serde_json::json;

use crate::error::{HdcError, Result};
use crate::exponent::PExponent;

use super::profile::TypeProfile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnipModel {
    #[serde(rename = "E")]
    pub e: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    #[serde(skip)]
    pub p: PExponent,
    #[serde(skip)]
    pub num_types: usize,
    #[serde(skip)]
    pub m: usize,
}

pub fn build_cnip(profile: &TypeProfile, p: PExponent) -> Result<CnipModel> {
    let (nt, m, n) = (profile.num_types(), profile.m(), profile.n());
    if n == 0 {
        return Err(HdcError::Empty("the model needs at least one column"));
    }
    let cols = nt + m + 1;
    let mut e = Vec::with_capacity(m + 1);
    let mut b = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![0i64; cols];
        for (j, v) in row.iter_mut().take(nt).enumerate() {
            *v = profile.coefficient(i, j);
        }
        row[nt + i] = -1;
        e.push(row);
        b.push(-(profile.ones_per_string[i] as i64));
    }
    e.push(vec![1; cols]);
    b.push(0);
    // |z| = Σx + Σy ≤ n + m·n, so symmetric bounds of n'·n + m·n always admit it.
    let zb = (nt * n + m * n) as i64;
    let mut lower = vec![0i64; nt + m];
    let mut upper: Vec<i64> = profile.counts.iter().map(|&c| c as i64).collect();
    upper.extend(std::iter::repeat_n(n as i64, m));
    lower.push(-zb);
    upper.push(zb);
    Ok(CnipModel { e, b, lower, upper, p, num_types: nt, m })
}

impl CnipModel {
    pub fn rows(&self) -> usize {
        self.e.len()
    }

    pub fn cols(&self) -> usize {
        self.lower.len()
    }

    /// Completes `x` to the unique `(x, y, z)` satisfying the equality rows.
    pub fn complete(&self, x: &[usize]) -> Vec<i64> {
        let mut v: Vec<i64> = x.iter().map(|&t| t as i64).collect();
        for i in 0..self.m {
            let lhs: i64 = (0..self.num_types).map(|j| self.e[i][j] * v[j]).sum();
            v.push(lhs - self.b[i]);
        }
        let total: i64 = v.iter().sum();
        v.push(-total);
        v
    }

    /// Checks `E v = b` and `lower ≤ v ≤ upper`.
    pub fn is_feasible(&self, v: &[i64]) -> bool {
        v.len() == self.cols()
            && self.e.iter().zip(&self.b).all(|(row, &rhs)| row.iter().zip(v).map(|(a, x)| a * x).sum::<i64>() == rhs)
            && v.iter().zip(self.lower.iter().zip(&self.upper)).all(|(x, (l, u))| l <= x && x <= u)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "E": self.e,
            "b": self.b,
            "lower": self.lower,
            "upper": self.upper,
            "objective": {
                "kind": "sum_of_powers",
                "exponent": { "a": self.p.numer(), "b": self.p.denom() },
                "over": "y-block",
            },
            "variables": { "x": self.num_types, "y": self.m, "z": 1 },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::BinaryStringSet;
    use crate::typed::profile::extract_types;

    #[test]
    fn example_one_model() {
        let s = BinaryStringSet::parse_lines(&["0000", "0001", "1110"]).unwrap();
        let model = build_cnip(&extract_types(&s), PExponent::integer(2).unwrap()).unwrap();
        assert_eq!(model.rows(), 4);
        assert_eq!(model.cols(), 6);
        assert_eq!(model.b, vec![0, -1, -3, 0]);
        assert_eq!(model.e[3], vec![1; 6]);
        assert_eq!(model.e[2], vec![-1, 1, 0, 0, -1, 0]);
        for x in [[0, 0], [2, 0], [3, 1]] {
            assert!(model.is_feasible(&model.complete(&x)));
        }
        let json = model.to_json();
        assert_eq!(json["objective"]["over"], "y-block");
        assert_eq!(json["objective"]["exponent"]["a"], 2);
    }

    #[test]
    fn single_string_row() {
        let s = BinaryStringSet::parse_lines(&["1"]).unwrap();
        let model = build_cnip(&extract_types(&s), PExponent::integer(2).unwrap()).unwrap();
        assert_eq!(model.e[0], vec![-1, -1, 0]);
        assert_eq!(model.b[0], -1);
    }

    #[test]
    fn rejects_empty_strings() {
        let s = BinaryStringSet::new(vec![crate::bits::BinaryString::zeros(0)]).unwrap();
        assert!(build_cnip(&extract_types(&s), PExponent::integer(2).unwrap()).is_err());
    }
}
