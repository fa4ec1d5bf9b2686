//! Dynamic program over distance vectors.
//!
//! Layer `j` holds every tuple `(d_1, …, d_m)` with all `d_i ≤ cap` that some
//! length-`j` prefix attains. A tuple is packed as a mixed-radix index with
//! digit `i` weighted by `(cap + 1)^i`. Costs are only evaluated on the last
//! layer, so the table itself is exact regardless of the cost scalar.

use crate::bits::BinaryString;
use crate::cost::{compare_cost, CostBudget, CostValue, Verdict};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::BinaryStringSet;
use crate::result::{Algorithm, CentroidResult, Decision};
use crate::scalar::{with_scalar, CostScalar, PowerTable};

pub const DEFAULT_MEM_CAP_BYTES: u128 = 1 << 30;
pub const MEM_CAP_ENV: &str = "HDC_MEM_CAP_MB";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpConfig {
    /// Upper bound on the bytes the table may occupy.
    pub mem_cap_bytes: u128,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { mem_cap_bytes: DEFAULT_MEM_CAP_BYTES }
    }
}

impl DpConfig {
    pub fn with_mem_cap_mb(mb: u64) -> Self {
        DpConfig { mem_cap_bytes: mb as u128 * 1024 * 1024 }
    }

    /// Reads the cap in MiB from `HDC_MEM_CAP_MB`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(MEM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(Self::with_mem_cap_mb)
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub(crate) fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)] }
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Per-column transition: which strings move one step further away when the
/// centroid takes bit `c`, and the index offset that causes.
#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub(crate) movers: [Vec<usize>; 2],
    pub(crate) delta: [usize; 2],
}

/// Number of tuples `(cap + 1)^m`, or `None` on overflow.
pub(crate) fn state_count(cap: usize, m: usize, extra: usize) -> Option<usize> {
    let radix = cap.checked_add(1)?;
    let mut states = extra;
    for _ in 0..m {
        states = states.checked_mul(radix)?;
    }
    Some(states)
}

pub(crate) fn table_bytes(states: usize, layers: usize) -> u128 {
    states.div_ceil(64) as u128 * 8 * layers as u128
}

/// The reachability table: layer `j` marks the tuples some length-`j` prefix attains.
#[derive(Clone, Debug)]
pub struct DpTable {
    m: usize,
    n: usize,
    cap: usize,
    /// Required number of ones, tracked as the lowest digit when set.
    ones: Option<usize>,
    strides: Vec<usize>,
    steps: Vec<Step>,
    layers: Vec<Bitset>,
}

impl DpTable {
    /// Builds all `n + 1` layers for distances capped at `cap`.
    pub fn build(set: &BinaryStringSet, cap: usize, config: &DpConfig) -> Result<DpTable> {
        Self::build_inner(set, cap, None, config)
    }

    /// Same table with an extra digit counting the ones of the prefix, up to `t`.
    pub fn build_with_ones(set: &BinaryStringSet, cap: usize, t: usize, config: &DpConfig) -> Result<DpTable> {
        Self::build_inner(set, cap, Some(t), config)
    }

    fn build_inner(set: &BinaryStringSet, cap: usize, ones: Option<usize>, config: &DpConfig) -> Result<DpTable> {
        let (m, n) = (set.m(), set.n());
        let cap = cap.min(n);
        let base = ones.map_or(Some(1), |t| t.checked_add(1));
        let states = base.and_then(|b| state_count(cap, m, b));
        let required = states.map(|s| table_bytes(s, n + 1)).unwrap_or(u128::MAX);
        if required > config.mem_cap_bytes {
            return Err(HdcError::TableTooLarge { required, cap: config.mem_cap_bytes });
        }
        let states = states.expect("checked above");
        let mut strides = Vec::with_capacity(m);
        let mut acc = base.expect("checked above");
        for _ in 0..m {
            strides.push(acc);
            acc *= cap + 1;
        }
        let steps: Vec<Step> = (1..=n)
            .map(|j| {
                let col = set.column(j);
                let mut movers = [Vec::new(), Vec::new()];
                for (i, &bit) in col.iter().enumerate() {
                    // Centroid bit c moves string i away iff s_i[j] != c.
                    movers[usize::from(!bit)].push(i);
                }
                let delta = [
                    movers[0].iter().map(|&i| strides[i]).sum(),
                    movers[1].iter().map(|&i| strides[i]).sum::<usize>() + usize::from(ones.is_some()),
                ];
                Step { movers, delta }
            })
            .collect();
        let mut layers = Vec::with_capacity(n + 1);
        let mut first = Bitset::new(states);
        first.set(0);
        layers.push(first);
        let mut table = DpTable { m, n, cap, ones, strides, steps, layers };
        for j in 1..=n {
            let mut next = Bitset::new(states);
            let prev = &table.layers[j - 1];
            for idx in prev.ones() {
                for c in 0..2 {
                    if table.can_move(idx, j, c) {
                        next.set(idx + table.steps[j - 1].delta[c]);
                    }
                }
            }
            table.layers.push(next);
        }
        Ok(table)
    }

    #[inline]
    fn digit(&self, idx: usize, i: usize) -> usize {
        (idx / self.strides[i]) % (self.cap + 1)
    }

    /// Whether taking bit `c` at column `j` keeps every distance within the cap.
    #[inline]
    fn can_move(&self, idx: usize, j: usize, c: usize) -> bool {
        if let (1, Some(t)) = (c, self.ones) {
            if idx % (t + 1) >= t {
                return false;
            }
        }
        self.steps[j - 1].movers[c].iter().all(|&i| self.digit(idx, i) < self.cap)
    }

    /// Whether a last-layer state is a complete solution.
    fn is_final(&self, idx: usize) -> bool {
        self.ones.is_none_or(|t| idx % (t + 1) == t)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn decode(&self, idx: usize) -> Vec<usize> {
        (0..self.m).map(|i| self.digit(idx, i)).collect()
    }

    fn encode(&self, digits: &[usize]) -> Option<usize> {
        if digits.len() != self.m || digits.iter().any(|&d| d > self.cap) {
            return None;
        }
        Some(digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum())
    }

    /// Whether some length-`j` prefix attains exactly the given distances.
    /// Tables with a ones digit answer over any ones count.
    pub fn is_reachable(&self, j: usize, digits: &[usize]) -> bool {
        let Some(idx) = (j <= self.n).then(|| self.encode(digits)).flatten() else {
            return false;
        };
        let width = self.ones.map_or(1, |t| t + 1);
        (0..width).any(|o| self.layers[j].get(idx + o))
    }

    /// All tuples reachable at layer `j`, sorted and without duplicates.
    pub fn reachable(&self, j: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.layers[j].ones().map(|idx| self.decode(idx)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Restricts every layer to the states that can still reach `targets` in
    /// the last layer, then reads off the lexicographically smallest string
    /// ending in a target.
    fn lex_smallest_to(mut self, targets: Bitset) -> BinaryString {
        self.layers[self.n] = targets;
        for j in (1..=self.n).rev() {
            let mut keep = Bitset { words: vec![0; self.layers[j - 1].words.len()] };
            for idx in self.layers[j - 1].ones() {
                let ok = (0..2).any(|c| {
                    self.can_move(idx, j, c) && self.layers[j].get(idx + self.steps[j - 1].delta[c])
                });
                if ok {
                    keep.set(idx);
                }
            }
            self.layers[j - 1] = keep;
        }
        let mut idx = 0;
        let mut bits = Vec::with_capacity(self.n);
        for j in 1..=self.n {
            let c = if self.can_move(idx, j, 0) && self.layers[j].get(idx + self.steps[j - 1].delta[0]) {
                0
            } else {
                1
            };
            idx += self.steps[j - 1].delta[c];
            bits.push(c == 1);
        }
        BinaryString::from_bits(bits)
    }
}

/// Largest `D ≤ n` with `D^p ≤ budget`. Indeterminate steps count as admitted
/// so the cap never excludes a feasible distance.
pub fn max_single_distance(budget: &CostBudget, n: usize) -> usize {
    let mut d = 0;
    while d < n && budget.admits_power(d as u64 + 1) != Verdict::Above {
        d += 1;
    }
    d
}

/// Distance cap for the table. When `D^p` equals the budget exactly and
/// `m ≥ 2`, a feasible centroid at distance `D` from some string is at
/// distance 0 from all others, i.e. it coincides with an input string. Those
/// are checked directly, so the cap can drop to `D − 1`.
pub fn distance_cap(budget: &CostBudget, m: usize, n: usize) -> usize {
    let d = max_single_distance(budget, n);
    if d > 0 && m >= 2 && budget.equals_power(d as u64) {
        d - 1
    } else {
        d
    }
}

/// Lexicographically smallest optimum over the last-layer tuples.
pub(crate) fn table_optimum<T: CostScalar>(table: DpTable, set: &BinaryStringSet, p: PExponent) -> Result<Option<CentroidResult>> {
    let power = PowerTable::<T>::new(p, table.cap, table.m).expect("scalar chosen to fit");
    let last = &table.layers[table.n];
    let cost_of = |idx: usize| power.sum(table.decode(idx));
    let finals = || last.ones().filter(|&idx| table.is_final(idx));
    let mut min: Option<T> = None;
    for idx in finals() {
        let c = cost_of(idx);
        if min.as_ref().is_none_or(|m| c < *m) {
            min = Some(c);
        }
    }
    let Some(min) = min else { return Ok(None) };
    let slack = T::RELATIVE_SLACK;
    let limit = min.to_f64() * (1.0 + slack) + slack;
    let near: Vec<usize> = finals()
        .filter(|&idx| {
            let c = cost_of(idx);
            if T::EXACT {
                c == min
            } else {
                c.to_f64() <= limit
            }
        })
        .collect();
    let mut targets = Bitset { words: vec![0; last.words.len()] };
    if T::EXACT {
        near.iter().for_each(|&idx| targets.set(idx));
    } else {
        // Keep only tuples whose exact cost is minimal among the near ones.
        let exact: Vec<CostValue> = near.iter().map(|&idx| CostValue::from_distances(&table.decode(idx), p)).collect();
        for (k, &idx) in near.iter().enumerate() {
            if exact.iter().all(|other| exact[k].compare(other) == Verdict::Below) {
                targets.set(idx);
            }
        }
    }
    let algorithm = if table.ones.is_some() { Algorithm::Committee } else { Algorithm::Dp };
    let centroid = table.lex_smallest_to(targets);
    Ok(Some(CentroidResult::evaluate(centroid, set, p, algorithm)?))
}

fn dp_generic<T: CostScalar>(
    set: &BinaryStringSet,
    p: PExponent,
    budget: &CostBudget,
    config: &DpConfig,
) -> Result<Decision> {
    let cap = distance_cap(budget, set.m(), set.n());
    let table = DpTable::build(set, cap, config)?;
    let mut best = table_optimum::<T>(table, set, p)?;
    for s in set.strings() {
        let cand = CentroidResult::evaluate(s.clone(), set, p, Algorithm::Dp)?;
        if compare_cost(&cand.cost, budget) == Verdict::Above {
            continue;
        }
        best = Some(match best {
            None => cand,
            Some(b) => pick_better(b, cand),
        });
    }
    Ok(Decision::from_best(best, budget))
}

/// Lower cost wins; exact ties go to the lexicographically smaller centroid.
pub(crate) fn pick_better(a: CentroidResult, b: CentroidResult) -> CentroidResult {
    let b_le_a = b.cost.compare(&a.cost) == Verdict::Below;
    let a_le_b = a.cost.compare(&b.cost) == Verdict::Below;
    match (a_le_b, b_le_a) {
        (true, true) => {
            if b.centroid < a.centroid {
                b
            } else {
                a
            }
        }
        (false, true) => b,
        _ => a,
    }
}

/// Decides whether a centroid within `budget` exists and returns the
/// lexicographically smallest optimum of the capped table when it does.
pub fn solve_dp(set: &BinaryStringSet, p: PExponent, budget: &CostBudget, config: &DpConfig) -> Result<Decision> {
    if budget.exponent() != p {
        return Err(HdcError::InvalidBudget("budget exponent differs from p".into()));
    }
    let cap = distance_cap(budget, set.m(), set.n());
    with_scalar!(p, cap, set.m(), dp_generic(set, p, budget, config))
}
