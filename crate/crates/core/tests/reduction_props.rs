mod common;

use common::config;
use hdc_core::generator::random_graph;
use hdc_core::reduction::{centroid_to_coloring, check_cover, coloring_to_centroid, reduce_3coloring, reduced_length, Graph, Role};
use hdc_core::{p_power_cost, PExponent, PowerSum};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..7, any::<u64>()).prop_flat_map(|(n, seed)| {
        let max_m = n * (n - 1) / 2;
        (0..=max_m.min(8)).prop_map(move |m| random_graph(n, m, seed).unwrap())
    })
}

fn exponents() -> impl Strategy<Value = PExponent> {
    prop_oneof![
        Just(PExponent::integer(2).unwrap()),
        Just(PExponent::integer(3).unwrap()),
        Just(PExponent::new(3, 2).unwrap()),
        Just(PExponent::new(5, 2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn construction_totals(g in graph_strategy(), p in exponents(), distinct in any::<bool>()) {
        let out = reduce_3coloring(&g, p, distinct).unwrap();
        let (n, m) = (g.vertex_count(), g.edge_count());
        let (a, b) = (p.numer(), p.denom());
        let copies = 1usize << (a - b);
        prop_assert_eq!(out.n_hat, n + m);
        prop_assert_eq!(out.instance.set.m(), copies + 1 + 2 * (n + 3 * m));
        let extra = if distinct { copies + (1 << b) } else { 0 };
        prop_assert_eq!(out.instance.set.n(), ((1 << b) + 2) * out.n_hat + extra);
        prop_assert_eq!(out.instance.set.n(), reduced_length(out.n_hat, p, distinct).unwrap());
        prop_assert_eq!(out.roles.len(), out.instance.set.m());
        // Without the appended columns the zero copies repeat.
        prop_assert_eq!(out.instance.set.all_distinct(), distinct);
        let first = if distinct { out.n_hat as u64 + 1 } else { out.n_hat as u64 };
        let budget = PowerSum::power_term(p, first, (1u64 << a) + copies as u64)
            .add(&PowerSum::power_term(p, 2 * out.n_hat as u64, 2 * (n + 3 * m) as u64));
        prop_assert!(out.instance.budget.power_budget().same_value(&budget));
        for i in 1..=n {
            let s = out.indices_where(|r| *r == Role::VertexS(i))[0];
            let r = out.indices_where(|r| *r == Role::VertexR(i))[0];
            let d = hdc_core::hamming_distance(out.instance.set.get(s), out.instance.set.get(r)).unwrap();
            prop_assert_eq!(d, 4 * out.n_hat);
        }
    }

    /// A proper coloring covers every vertex and edge string exactly once and
    /// meets the budget with equality; reading it back gives the coloring.
    #[test]
    fn colorings_meet_the_budget_exactly(g in graph_strategy(), p in exponents(), distinct in any::<bool>()) {
        let Some(col) = g.find_3coloring() else { return Ok(()) };
        let out = reduce_3coloring(&g, p, distinct).unwrap();
        let s = coloring_to_centroid(&g, &col, p, distinct).unwrap();
        prop_assert_eq!(s.count_ones(), out.n_hat);
        prop_assert!(s.ones_positions().iter().all(|&j| j <= 3 * out.n_hat));
        let rep = check_cover(&out, &s).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
        let cost = p_power_cost(&s, &out.instance.set, p).unwrap();
        prop_assert!(cost.power_sum().same_value(out.instance.budget.power_budget()));
        let back = centroid_to_coloring(&g, &s, p).unwrap();
        prop_assert_eq!(&back, &col);
        prop_assert!(back.is_proper(&g));
    }
}
