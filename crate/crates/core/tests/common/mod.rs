#![allow(dead_code)]

use hdc_core::{BinaryString, BinaryStringSet, CostBudget, CostValue, PExponent};
use proptest::prelude::*;

pub fn set_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = BinaryStringSet> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), m)
            .prop_map(|rows| BinaryStringSet::new(rows.into_iter().map(BinaryString::from_bits).collect()).unwrap())
    })
}

pub fn string_strategy(n: usize) -> impl Strategy<Value = BinaryString> {
    prop::collection::vec(any::<bool>(), n).prop_map(BinaryString::from_bits)
}

pub fn exponent_strategy() -> impl Strategy<Value = PExponent> {
    prop_oneof![
        Just(PExponent::integer(2).unwrap()),
        Just(PExponent::integer(3).unwrap()),
        Just(PExponent::new(3, 2).unwrap()),
    ]
}

pub fn budget_of(cost: &CostValue) -> CostBudget {
    CostBudget::from_power_sum(cost.power_sum().clone())
}

/// Exact equality of two costs.
pub fn same_cost(a: &CostValue, b: &CostValue) -> bool {
    a.power_sum().same_value(b.power_sum())
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
