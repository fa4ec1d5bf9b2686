//! The 3-coloring reduction.
//!
//! With `n̂ = n + m` every string has `3n̂` "triple" columns (one triple per
//! vertex, then one per edge), a zero block of `(2^b − 2)n̂` columns and a
//! final block of `n̂` columns. The distinct variant appends `2^(a−b) + 2^b`
//! further columns.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::BinaryString;
use crate::cost::{CostBudget, PowerSum};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::{BinaryStringSet, Instance};

use super::graph::Graph;

/// Largest `2^(a−b)` or `2^b` the construction accepts.
pub const MAX_BLOCK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Group1AllOnes,
    /// 1-based copy index.
    Group1ZeroCopy(usize),
    VertexS(usize),
    VertexR(usize),
    EdgeT(usize, u8),
    EdgeW(usize, u8),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Group1AllOnes => write!(f, "group1-allones"),
            Role::Group1ZeroCopy(c) => write!(f, "group1-zero-copy#{c}"),
            Role::VertexS(i) => write!(f, "vertex-s_{i}"),
            Role::VertexR(i) => write!(f, "vertex-r_{i}"),
            Role::EdgeT(j, z) => write!(f, "edge-t_{j}^{z}"),
            Role::EdgeW(j, z) => write!(f, "edge-w_{j}^{z}"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub n_hat: usize,
    /// Role of each string, in instance order.
    pub roles: Vec<Role>,
    pub distinct: bool,
}

impl ReductionOutput {
    pub fn role_map_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n_hat": self.n_hat,
            "distinct": self.distinct,
            "roles": self.roles,
        })
    }

    /// Indices of the strings with the given role predicate.
    pub fn indices_where<F: Fn(&Role) -> bool>(&self, f: F) -> Vec<usize> {
        self.roles.iter().enumerate().filter(|(_, r)| f(r)).map(|(i, _)| i).collect()
    }
}

/// `(2^(a−b), 2^b)` after checking they are of usable size.
pub(crate) fn block_sizes(p: PExponent) -> Result<(usize, usize)> {
    let (a, b) = (p.numer(), p.denom());
    let copies = 1u64.checked_shl(a - b).filter(|&c| c <= MAX_BLOCK);
    let two_b = 1u64.checked_shl(b).filter(|&c| c <= MAX_BLOCK);
    match (copies, two_b) {
        (Some(c), Some(t)) => Ok((c as usize, t as usize)),
        _ => Err(HdcError::InvalidArgument(format!("p = {p} needs blocks larger than {MAX_BLOCK} columns"))),
    }
}

fn run(bits: &mut Vec<bool>, value: bool, len: usize) {
    bits.extend(std::iter::repeat_n(value, len));
}

/// Group 1: `1_{(2^b+1)n̂} ∘ 0_{n̂}` and `2^(a−b)` copies of the zero string.
pub fn build_gadget_group1(n_hat: usize, p: PExponent) -> Result<BinaryStringSet> {
    if n_hat == 0 {
        return Err(HdcError::InvalidArgument("n_hat must be positive".into()));
    }
    let (copies, two_b) = block_sizes(p)?;
    let len = (two_b + 2) * n_hat;
    let mut g0 = Vec::with_capacity(len);
    run(&mut g0, true, (two_b + 1) * n_hat);
    run(&mut g0, false, n_hat);
    let mut strings = vec![BinaryString::from_bits(g0)];
    strings.extend(std::iter::repeat_n(BinaryString::zeros(len), copies));
    BinaryStringSet::new(strings)
}

/// The triple block of `3n̂` columns with triples `ℓ` (1-based) set to `pattern`.
fn triples(n_hat: usize, set: &[usize], pattern: [bool; 3]) -> Vec<bool> {
    let mut bits = vec![false; 3 * n_hat];
    for &l in set {
        bits[3 * (l - 1)..3 * l].copy_from_slice(&pattern);
    }
    bits
}

fn one_hot(z: u8) -> [bool; 3] {
    let mut t = [false; 3];
    t[z as usize] = true;
    t
}

/// Appends the middle zero block and the tail `0 ∘ 1_{n̂−1}` (or its complement).
fn finish(mut head: Vec<bool>, n_hat: usize, two_b: usize, complement_tail: bool) -> Vec<bool> {
    run(&mut head, false, (two_b - 2) * n_hat);
    head.push(complement_tail);
    run(&mut head, !complement_tail, n_hat - 1);
    head
}

/// `k^p = (2^a + 2^(a−b)) n̂^p + 2(n + 3m)(2n̂)^p`, or with `n̂ + 1` in the
/// first term for the distinct variant.
pub fn reduction_budget(p: PExponent, n: usize, m: usize, distinct: bool) -> Result<CostBudget> {
    let (copies, two_b) = block_sizes(p)?;
    let two_a = copies as u64 * two_b as u64;
    let n_hat = (n + m) as u64;
    let base = if distinct { n_hat + 1 } else { n_hat };
    let g = PowerSum::power_term(p, base, two_a + copies as u64);
    let pairs = PowerSum::power_term(p, 2 * n_hat, 2 * (n as u64 + 3 * m as u64));
    Ok(CostBudget::from_power_sum(g.add(&pairs)))
}

pub fn reduce_3coloring(graph: &Graph, p: PExponent, distinct: bool) -> Result<ReductionOutput> {
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let n_hat = n + m;
    let (copies, two_b) = block_sizes(p)?;
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut roles = Vec::new();

    for (i, g) in build_gadget_group1(n_hat, p)?.strings().iter().enumerate() {
        rows.push(g.iter().collect());
        roles.push(if i == 0 { Role::Group1AllOnes } else { Role::Group1ZeroCopy(i) });
    }
    for i in 1..=n {
        let u = triples(n_hat, &[i], [true; 3]);
        let u_bar: Vec<bool> = u.iter().map(|b| !b).collect();
        rows.push(finish(u, n_hat, two_b, false));
        roles.push(Role::VertexS(i));
        rows.push(finish(u_bar, n_hat, two_b, true));
        roles.push(Role::VertexR(i));
    }
    for (j0, &(x, y)) in graph.edges().iter().enumerate() {
        let j = j0 + 1;
        let at = [x, y, j + n];
        let e: Vec<Vec<bool>> = (0..3).map(|z| triples(n_hat, &at, one_hot(z))).collect();
        for (z, ez) in e.iter().enumerate() {
            rows.push(finish(ez.clone(), n_hat, two_b, false));
            roles.push(Role::EdgeT(j, z as u8));
        }
        for (z, ez) in e.iter().enumerate() {
            rows.push(finish(ez.iter().map(|b| !b).collect(), n_hat, two_b, true));
            roles.push(Role::EdgeW(j, z as u8));
        }
    }

    if distinct {
        let extra = copies + two_b;
        for (row, role) in rows.iter_mut().zip(&roles) {
            let mut tail = vec![false; extra];
            match role {
                Role::Group1AllOnes => tail[copies..].iter_mut().for_each(|b| *b = true),
                Role::Group1ZeroCopy(c) => tail[c - 1] = true,
                _ => {}
            }
            row.extend(tail);
        }
    }

    let set = BinaryStringSet::new(rows.into_iter().map(BinaryString::from_bits).collect())?;
    let budget = reduction_budget(p, n, m, distinct)?;
    Ok(ReductionOutput { instance: Instance::new(set, p, budget)?, n_hat, roles, distinct })
}

/// String length of the reduced instance.
pub fn reduced_length(n_hat: usize, p: PExponent, distinct: bool) -> Result<usize> {
    let (copies, two_b) = block_sizes(p)?;
    Ok((two_b + 2) * n_hat + if distinct { copies + two_b } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::hamming_distance;
    use num_bigint::BigInt;

    fn two() -> PExponent {
        PExponent::integer(2).unwrap()
    }

    #[test]
    fn gadget_examples() {
        let g = build_gadget_group1(1, two()).unwrap();
        let s: Vec<String> = g.strings().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, vec!["1110", "0000", "0000"]);
        let g = build_gadget_group1(2, two()).unwrap();
        assert_eq!(g.get(0).to_string(), "11111100");
        assert_eq!(g.m(), 3);
        let g = build_gadget_group1(1, PExponent::integer(3).unwrap()).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.get(0).to_string(), "1110");
        assert!(build_gadget_group1(0, two()).is_err());
    }

    #[test]
    fn triangle_totals() {
        let out = reduce_3coloring(&Graph::complete(3).unwrap(), two(), false).unwrap();
        assert_eq!(out.n_hat, 6);
        assert_eq!(out.instance.set.m(), 27);
        assert_eq!(out.instance.set.n(), 24);
        assert_eq!(out.instance.budget.as_rational().unwrap(), BigInt::from(3672).into());
        for i in 1..=3 {
            let s = out.indices_where(|r| *r == Role::VertexS(i))[0];
            let r = out.indices_where(|r| *r == Role::VertexR(i))[0];
            assert_eq!(hamming_distance(out.instance.set.get(s), out.instance.set.get(r)).unwrap(), 4 * 6);
        }
    }

    #[test]
    fn worked_edge_example() {
        // a = 3, b = 2, three vertices, e_2 = {v_1, v_3}.
        let g = Graph::new(3, vec![(1, 2), (1, 3)]).unwrap();
        let p = PExponent::new(3, 2).unwrap();
        let out = reduce_3coloring(&g, p, false).unwrap();
        let get = |role: Role| out.instance.set.get(out.indices_where(|r| *r == role)[0]).to_string();
        assert_eq!(get(Role::EdgeT(2, 0)), "100000100000100000000000001111");
        assert_eq!(get(Role::EdgeT(2, 1)), "010000010000010000000000001111");
        assert_eq!(get(Role::EdgeW(2, 0)), "011111011111011000000000010000");
        assert_eq!(get(Role::EdgeW(2, 2)), "110111110111110000000000010000");
    }

    #[test]
    fn distinct_variant_shape() {
        let g = Graph::complete(3).unwrap();
        let out = reduce_3coloring(&g, two(), true).unwrap();
        assert_eq!(out.instance.set.n(), 24 + 2 + 2);
        assert!(out.instance.set.all_distinct());
        assert_eq!(out.instance.set.get(0).to_string().get(24..), Some("0011"));
        assert_eq!(out.instance.set.get(1).to_string().get(24..), Some("1000"));
        assert_eq!(out.instance.set.get(2).to_string().get(24..), Some("0100"));
        // 6 * 7^2 + 24 * 12^2
        assert_eq!(out.instance.budget.as_rational().unwrap(), BigInt::from(294 + 3456).into());
        let plain = reduce_3coloring(&g, two(), false).unwrap();
        assert!(!plain.instance.set.all_distinct());
    }

    #[test]
    fn role_names() {
        assert_eq!(Role::EdgeT(2, 1).to_string(), "edge-t_2^1");
        assert_eq!(Role::Group1ZeroCopy(3).to_string(), "group1-zero-copy#3");
    }
}
