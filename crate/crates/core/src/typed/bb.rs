//! Best-first branch and bound over the type counts `0 ≤ x ≤ e`.
//!
//! The objective `F(x) = Σ_i (w_i + Σ_j x_j c_ij)^p` is convex on the box.
//! Each node minimizes it over its sub-box by projected coordinate descent and
//! bounds from below with the first-order inequality
//! `F(y) ≥ F(x) + ∇F(x)·(y − x)`, minimized over the box coordinatewise.
//! That bound is valid at any `x`, converged or not.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::Float;

use crate::bits::BinaryString;
use crate::cost::{compare_cost, CostBudget, Verdict};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::exact::track::Tracker;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult, Decision};
use crate::scalar::PowerTable;

use super::profile::{decode_centroid, extract_types, TypeProfile, TypeSolution};

pub const RELAX_TOLERANCE: f64 = 1e-7;
const MAX_SWEEPS: usize = 1_000;
const PRUNE_REL: f64 = 1e-9;

/// Continuous minimizer of a node and the lower bound derived from it.
#[derive(Clone, Debug)]
pub struct Relaxation<F> {
    pub x: Vec<F>,
    pub value: F,
    pub bound: F,
}

struct Affine<F> {
    coeff: Vec<Vec<F>>,
    w: Vec<F>,
    p: F,
}

impl<F: Float> Affine<F> {
    fn new(profile: &TypeProfile, p: PExponent) -> Self {
        let coeff = (0..profile.m())
            .map(|i| (0..profile.num_types()).map(|j| F::from(profile.coefficient(i, j)).unwrap()).collect())
            .collect();
        let w = profile.ones_per_string.iter().map(|&v| F::from(v).unwrap()).collect();
        Affine { coeff, w, p: F::from(p.as_f64()).unwrap() }
    }

    fn values(&self, x: &[F]) -> Vec<F> {
        self.coeff
            .iter()
            .zip(&self.w)
            .map(|(row, &w)| row.iter().zip(x).fold(w, |acc, (&c, &xj)| acc + c * xj))
            .collect()
    }

    fn objective(&self, a: &[F]) -> F {
        a.iter().fold(F::zero(), |acc, &v| acc + v.max(F::zero()).powf(self.p))
    }

    /// `∂F/∂x_j` at the point with affine values `a`, coordinate `j` shifted by `t`.
    fn partial(&self, a: &[F], j: usize, t: F) -> F {
        let pm1 = self.p - F::one();
        self.coeff.iter().zip(a).fold(F::zero(), |acc, (row, &ai)| {
            let c = row[j];
            acc + self.p * c * (ai + c * t).max(F::zero()).powf(pm1)
        })
    }
}

/// Minimizes the continuous objective over `lower ≤ x ≤ upper`, starting from `start`.
pub fn relax<F: Float>(
    profile: &TypeProfile,
    p: PExponent,
    lower: &[usize],
    upper: &[usize],
    start: Option<&[F]>,
) -> Relaxation<F> {
    assert!(lower.len() == profile.num_types() && upper.len() == profile.num_types());
    let f = Affine::<F>::new(profile, p);
    relax_with(&f, lower, upper, start)
}

fn relax_with<F: Float>(f: &Affine<F>, lower: &[usize], upper: &[usize], start: Option<&[F]>) -> Relaxation<F> {
    let nt = lower.len();
    let lo: Vec<F> = lower.iter().map(|&v| F::from(v).unwrap()).collect();
    let hi: Vec<F> = upper.iter().map(|&v| F::from(v).unwrap()).collect();
    let mut x: Vec<F> = match start {
        Some(s) => s.iter().zip(lo.iter().zip(&hi)).map(|(&v, (&l, &h))| v.max(l).min(h)).collect(),
        None => lo.iter().zip(&hi).map(|(&l, &h)| (l + h) / F::from(2).unwrap()).collect(),
    };
    let tol = F::from(RELAX_TOLERANCE).unwrap();
    let mut a = f.values(&x);
    for _ in 0..MAX_SWEEPS {
        let mut moved = F::zero();
        for j in 0..nt {
            if hi[j] <= lo[j] {
                continue;
            }
            // Minimize along coordinate j: the partial derivative is nondecreasing in the shift.
            let (dl, dh) = (lo[j] - x[j], hi[j] - x[j]);
            let shift = if f.partial(&a, j, dl) >= F::zero() {
                dl
            } else if f.partial(&a, j, dh) <= F::zero() {
                dh
            } else {
                let (mut l, mut h) = (dl, dh);
                while h - l > tol {
                    let mid = (l + h) / F::from(2).unwrap();
                    if f.partial(&a, j, mid) < F::zero() {
                        l = mid;
                    } else {
                        h = mid;
                    }
                    if mid == l && mid == h {
                        break;
                    }
                }
                (l + h) / F::from(2).unwrap()
            };
            if shift != F::zero() {
                x[j] = x[j] + shift;
                for (ai, row) in a.iter_mut().zip(&f.coeff) {
                    *ai = *ai + row[j] * shift;
                }
                moved = moved.max(shift.abs());
            }
        }
        if moved < tol {
            break;
        }
    }
    let a = f.values(&x);
    let value = f.objective(&a);
    let mut bound = value;
    for j in 0..nt {
        let g = f.partial(&a, j, F::zero());
        bound = bound + (g * (lo[j] - x[j])).min(g * (hi[j] - x[j]));
    }
    Relaxation { x, value, bound }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BbStats {
    pub nodes: u64,
    pub pruned: u64,
}

struct Node {
    bound: f64,
    seq: u64,
    lower: Vec<usize>,
    upper: Vec<usize>,
    x: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Reversed so the max-heap pops the smallest bound, oldest first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound).then(other.seq.cmp(&self.seq))
    }
}

type Candidate = (BinaryString, Vec<usize>);

/// Exact integer minimizer of the objective over the whole box. Ties between
/// equal objectives go to the lexicographically smallest decoded centroid.
pub fn solve_typed_optimum(profile: &TypeProfile, p: PExponent) -> Result<(TypeSolution, BbStats)> {
    let nt = profile.num_types();
    let table = PowerTable::<f64>::new(p, profile.n(), profile.m())
        .ok_or_else(|| HdcError::InvalidArgument("costs exceed the floating-point range".into()))?;
    let f = Affine::<f64>::new(profile, p);
    let distances = |c: &Candidate| profile.distances_unchecked(&c.1);
    let mut best: Tracker<f64, Candidate> = Tracker::new(p);
    let offer = |best: &mut Tracker<f64, Candidate>, x: Vec<usize>| {
        let cost = table.sum(profile.distances_unchecked(&x));
        let s = decode_centroid(&x, profile).expect("x inside the box");
        best.offer(cost, (s, x), &distances);
    };
    let round = |r: &Relaxation<f64>, lower: &[usize], upper: &[usize]| -> Vec<usize> {
        (0..nt).map(|j| (r.x[j].round().max(0.0) as usize).clamp(lower[j], upper[j])).collect()
    };
    let limit = |best: &Tracker<f64, Candidate>| {
        best.best_cost().map_or(f64::INFINITY, |&c| c * (1.0 + PRUNE_REL) + PRUNE_REL)
    };

    let mut stats = BbStats::default();
    let mut heap = BinaryHeap::new();
    let lower = vec![0; nt];
    let upper = profile.counts.clone();
    let root = relax_with(&f, &lower, &upper, None);
    offer(&mut best, round(&root, &lower, &upper));
    let mut seq = 0;
    heap.push(Node { bound: root.bound, seq, lower, upper, x: root.x });
    while let Some(node) = heap.pop() {
        stats.nodes += 1;
        if node.bound > limit(&best) {
            stats.pruned += 1;
            continue;
        }
        let Some(j) = (0..nt)
            .filter(|&j| node.upper[j] > node.lower[j])
            .max_by(|&a, &b| (node.upper[a] - node.lower[a]).cmp(&(node.upper[b] - node.lower[b])).then(b.cmp(&a)))
        else {
            offer(&mut best, node.lower.clone());
            continue;
        };
        let split = (node.x[j].floor().max(0.0) as usize).clamp(node.lower[j], node.upper[j] - 1);
        for (lo, hi) in [(node.lower[j], split), (split + 1, node.upper[j])] {
            let mut lower = node.lower.clone();
            let mut upper = node.upper.clone();
            lower[j] = lo;
            upper[j] = hi;
            let r = relax_with(&f, &lower, &upper, Some(&node.x));
            offer(&mut best, round(&r, &lower, &upper));
            if r.bound <= limit(&best) {
                seq += 1;
                heap.push(Node { bound: r.bound, seq, lower, upper, x: r.x });
            } else {
                stats.pruned += 1;
            }
        }
    }
    let (_, (_, x)) = best.into_best().expect("the box is non-empty");
    Ok((TypeSolution::new(x, profile, p)?, stats))
}

/// Optimal type counts and how their cost compares with `budget`.
pub fn solve_typed_bb(profile: &TypeProfile, p: PExponent, budget: &CostBudget) -> Result<(TypeSolution, Verdict)> {
    if budget.exponent() != p {
        return Err(HdcError::InvalidBudget("budget exponent differs from p".into()));
    }
    let (sol, _) = solve_typed_optimum(profile, p)?;
    let verdict = compare_cost(&sol.objective, budget);
    Ok((sol, verdict))
}

/// Runs the typed solver on a string set and decodes the centroid.
pub fn solve_typed_centroid(set: &BinaryStringSet, p: PExponent, budget: &CostBudget) -> Result<Decision> {
    let profile = extract_types(set);
    let (sol, _) = solve_typed_bb(&profile, p, budget)?;
    let centroid = decode_centroid(&sol.x, &profile)?;
    let result = CentroidResult::evaluate(centroid, set, p, Algorithm::TypedBb)?;
    Ok(Decision::from_best(Some(result), budget))
}
