//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so a seed
//! gives the same instance on every platform. Bits are drawn string by
//! string, column by column.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::approx_factor2;
use crate::bits::BinaryString;
use crate::cost::{p_power_cost, CostBudget};
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;
use crate::instance::{BinaryStringSet, Instance};
use crate::reduction::{reduce_3coloring, Graph, ReductionOutput};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GenMode {
    Uniform,
    /// Each bit of the planted centroid is flipped with probability `rho`.
    Planted { rho: f64 },
    /// Reduction of a random graph with `n` vertices and `m` edges.
    ReductionDerived { distinct: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub mode: GenMode,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, seed: u64, mode: GenMode) -> Result<Self> {
        let spec = GenSpec { n, m, seed, mode };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if let GenMode::Planted { rho } = self.mode {
            if !(0.0..=1.0).contains(&rho) {
                return Err(HdcError::InvalidArgument(format!("noise rate {rho} is outside [0, 1]")));
            }
        }
        match self.mode {
            // A graph may have no edges, but it needs a vertex.
            GenMode::ReductionDerived { .. } if self.n == 0 => {
                Err(HdcError::InvalidArgument("a graph needs at least one vertex".into()))
            }
            GenMode::ReductionDerived { .. } => Ok(()),
            _ if self.n == 0 || self.m == 0 => Err(HdcError::InvalidArgument("n and m must be at least 1".into())),
            _ => Ok(()),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn random_string<R: Rng>(rng: &mut R, n: usize) -> BinaryString {
    BinaryString::from_bits((0..n).map(|_| rng.gen::<bool>()))
}

/// `m` strings of `n` independent fair bits.
pub fn gen_uniform(spec: &GenSpec) -> Result<BinaryStringSet> {
    spec.validate()?;
    let mut rng = spec.rng();
    BinaryStringSet::new((0..spec.m).map(|_| random_string(&mut rng, spec.n)).collect())
}

/// A hidden centroid and `m` noisy copies of it. A uniform spec is treated as `rho = 0.5`.
pub fn gen_planted(spec: &GenSpec) -> Result<(BinaryStringSet, BinaryString)> {
    spec.validate()?;
    let rho = match spec.mode {
        GenMode::Planted { rho } => rho,
        _ => 0.5,
    };
    let mut rng = spec.rng();
    let planted = random_string(&mut rng, spec.n);
    let strings = (0..spec.m)
        .map(|_| BinaryString::from_bits(planted.iter().map(|b| b ^ rng.gen_bool(rho))))
        .collect();
    Ok((BinaryStringSet::new(strings)?, planted))
}

/// A uniformly random simple graph with `n` vertices and `m` edges.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    if m > pairs.len() {
        return Err(HdcError::InvalidArgument(format!("{n} vertices admit at most {} edges", pairs.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, pairs.len(), m).into_vec();
    picked.sort_unstable();
    Graph::new(n, picked.into_iter().map(|i| pairs[i]).collect())
}

pub fn gen_reduction(spec: &GenSpec, p: PExponent) -> Result<(Graph, ReductionOutput)> {
    spec.validate()?;
    let distinct = matches!(spec.mode, GenMode::ReductionDerived { distinct: true });
    let graph = random_graph(spec.n, spec.m, spec.seed)?;
    let out = reduce_3coloring(&graph, p, distinct)?;
    Ok((graph, out))
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance,
    pub planted: Option<BinaryString>,
    pub graph: Option<Graph>,
}

/// A full instance with a default budget: the planted cost for planted
/// instances, the best-input-string cost for uniform ones, and the reduction
/// budget for reduction-derived ones.
pub fn gen_instance(spec: &GenSpec, p: PExponent) -> Result<Generated> {
    match spec.mode {
        GenMode::Uniform => {
            let set = gen_uniform(spec)?;
            let budget = CostBudget::from_power_sum(approx_factor2(&set, p)?.cost.power_sum().clone());
            Ok(Generated { instance: Instance::new(set, p, budget)?, planted: None, graph: None })
        }
        GenMode::Planted { .. } => {
            let (set, planted) = gen_planted(spec)?;
            let budget = CostBudget::from_power_sum(p_power_cost(&planted, &set, p)?.power_sum().clone());
            Ok(Generated { instance: Instance::new(set, p, budget)?, planted: Some(planted), graph: None })
        }
        GenMode::ReductionDerived { .. } => {
            let (graph, out) = gen_reduction(spec, p)?;
            Ok(Generated { instance: out.instance, planted: None, graph: Some(graph) })
        }
    }
}
