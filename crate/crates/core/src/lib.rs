//! Exact and approximate solvers for the p-norm Hamming centroid problem.
//!
//! Given binary strings `s_1..s_m` of length `n` and a rational exponent
//! `p = a/b > 1`, find a string minimizing `Σ_i hd(s, s_i)^p`, or decide
//! whether one meets a budget `k^p`. Costs are compared exactly; scalar
//! accumulators are chosen per instance and can be swapped through the
//! `*_as` entry points.

pub mod approx;
pub mod bits;
pub mod cost;
pub mod error;
pub mod exact;
pub mod exponent;
pub mod generator;
pub mod instance;
pub mod reduction;
pub mod result;
pub mod scalar;
pub mod typed;

pub use approx::{approx_factor2, norm_ratio};
pub use bits::{hamming_distance, hamming_set, BinaryString};
pub use cost::{compare_cost, p_power_cost, CostBudget, CostValue, PowerSum, Verdict};
pub use error::{HdcError, Result};
pub use exponent::PExponent;
pub use instance::{BinaryStringSet, BudgetLine, Instance, InstanceDraft};
pub use result::{Algorithm, CentroidResult, Decision};
pub use scalar::{BudgetJudge, CostScalar, PowerTable};

/// Fixed-width accumulator used whenever the instance fits.
pub type WideCost = u128;
/// Arbitrary-precision integer accumulator.
pub type BigCost = num_bigint::BigInt;
/// Exact rational accumulator.
pub type RationalCost = num_rational::BigRational;
/// Float accumulator for fractional exponents; ties are re-checked exactly.
pub type FloatCost = f64;

pub type WidePowerTable = PowerTable<WideCost>;
pub type BigPowerTable = PowerTable<BigCost>;
pub type FloatPowerTable = PowerTable<FloatCost>;
