//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. Exits
//! non-zero if any pass/fail criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hdc_core::exact::{
    all_optimal_centroids, solve_bruteforce, solve_committee, solve_committee_bruteforce, solve_dispatch, solve_dp,
    solve_searchtree, DpConfig,
};
use hdc_core::generator::{gen_planted, gen_uniform, GenMode, GenSpec};
use hdc_core::reduction::{
    centroid_to_coloring, coloring_to_centroid, reduce_3coloring, structured_minimum, verify_gadget_lemma, Coloring,
    Graph,
};
use hdc_core::typed::solve_typed_centroid;
use hdc_core::{
    approx_factor2, norm_ratio, p_power_cost, BinaryString, BinaryStringSet, CentroidResult, CostBudget, CostValue,
    Decision, PExponent, PowerSum, Verdict,
};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

enum Status {
    Pass,
    Fail,
    /// Passes everything checkable, with a documented gap.
    Partial,
    Info,
}

struct Line {
    id: u32,
    status: Status,
    detail: String,
}

fn p(a: u32, b: u32) -> PExponent {
    PExponent::new(a, b).unwrap()
}

fn sample() -> BinaryStringSet {
    BinaryStringSet::parse_lines(&["1111111", "1111000", "0000100", "0000010", "0000001"]).unwrap()
}

fn same(a: &CostValue, b: &CostValue) -> bool {
    a.power_sum().same_value(b.power_sum())
}

fn budget_of(c: &CostValue) -> CostBudget {
    CostBudget::from_power_sum(c.power_sum().clone())
}

fn feasible(d: Decision) -> Option<CentroidResult> {
    match d {
        Decision::Feasible(r) => Some(r),
        _ => None,
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// 200 seeded instances with `n ≤ 12`, `m ≤ 6`, cycling through p = 2, 3, 3/2.
fn corpus() -> Vec<(BinaryStringSet, PExponent)> {
    let ps = [p(2, 1), p(3, 1), p(3, 2)];
    (0..200u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (n, m) = (rng.gen_range(1..=12), rng.gen_range(1..=6));
            let spec = GenSpec::new(n, m, seed, GenMode::Uniform).unwrap();
            (gen_uniform(&spec).unwrap(), ps[seed as usize % 3])
        })
        .collect()
}

fn criterion1() -> Line {
    let s = sample();
    let zero = BinaryString::zeros(7);
    let d0 = s.distances(&zero).unwrap();
    let l1: usize = d0.iter().sum();
    let l2 = p_power_cost(&zero, &s, p(2, 1)).unwrap().exact_part();
    let max0 = d0.iter().max().copied();
    let opt = p_power_cost(&"0011000".parse().unwrap(), &s, p(2, 1)).unwrap().exact_part();
    let max1 = s.distances(&"0011001".parse().unwrap()).unwrap().into_iter().max();
    let ok = l1 == 14
        && l2 == Some(BigInt::from(68))
        && max0 == Some(7)
        && opt == Some(BigInt::from(56))
        && max1 == Some(4);
    Line {
        id: 1,
        status: verdict(ok),
        detail: format!(
            "sample costs: sum {l1}, squares {}, max {}; 0011000 squares {}; 0011001 max {}",
            l2.unwrap_or_default(),
            max0.unwrap_or(0),
            opt.unwrap_or_default(),
            max1.unwrap_or(0)
        ),
    }
}

fn criterion2() -> Line {
    let s = sample();
    let two = p(2, 1);
    let bf = solve_bruteforce(&s, two).unwrap();
    let budget = budget_of(&bf.cost);
    let others = [
        feasible(solve_dp(&s, two, &budget, &DpConfig::default()).unwrap()),
        feasible(solve_searchtree(&s, two, &budget).unwrap()),
        feasible(solve_typed_centroid(&s, two, &budget).unwrap()),
    ];
    let target: BinaryString = "0011000".parse().unwrap();
    let agree = bf.centroid == target
        && bf.cost.exact_part() == Some(BigInt::from(56))
        && others.iter().all(|r| r.as_ref().is_some_and(|r| r.centroid == target && same(&r.cost, &bf.cost)));
    let (_, all) = all_optimal_centroids(&s, two).unwrap();
    let mut vectors: Vec<Vec<usize>> = all.iter().map(|c| s.distances(c).unwrap()).collect();
    vectors.sort();
    vectors.dedup();
    let status = match (agree, all.len()) {
        (false, _) => Status::Fail,
        (true, 1) => Status::Pass,
        (true, _) => Status::Partial,
    };
    Line {
        id: 2,
        status,
        detail: format!(
            "bruteforce, dp, searchtree and typed-bb all return 0011000 with cost 56; {} optimal strings sharing {} distance vector(s) {:?} (columns 1-4 are identical, so the optimum is unique only up to swapping them)",
            all.len(),
            vectors.len(),
            vectors.first().unwrap()
        ),
    }
}

struct CorpusRow {
    agree: bool,
    ratio: f64,
    committee_ok: bool,
}

fn run_corpus(corpus: &[(BinaryStringSet, PExponent)]) -> Vec<CorpusRow> {
    corpus
        .par_iter()
        .map(|(set, p)| {
            let p = *p;
            let opt = solve_bruteforce(set, p).unwrap();
            let budget = budget_of(&opt.cost);
            let runs = [
                solve_dp(set, p, &budget, &DpConfig::default()).unwrap(),
                solve_searchtree(set, p, &budget).unwrap(),
                solve_dispatch(set, p, &budget).unwrap(),
                solve_typed_centroid(set, p, &budget).unwrap(),
            ];
            let agree = runs.into_iter().all(|d| feasible(d).is_some_and(|r| same(&r.cost, &opt.cost)));
            let approx = approx_factor2(set, p).unwrap();
            let ratio = norm_ratio(&approx.cost, &opt.cost);

            let mut committee_ok = true;
            let mut best: Option<CostValue> = None;
            for t in 0..=set.n() {
                let bf = solve_committee_bruteforce(set, p, t).unwrap();
                let dp = feasible(solve_committee(set, p, &budget_of(&bf.cost), t, &DpConfig::default()).unwrap());
                committee_ok &= dp.is_some_and(|r| same(&r.cost, &bf.cost) && r.centroid == bf.centroid);
                if best.as_ref().is_none_or(|b| b.compare(&bf.cost) == Verdict::Above) {
                    best = Some(bf.cost);
                }
            }
            committee_ok &= best.is_some_and(|b| same(&b, &opt.cost));
            CorpusRow { agree, ratio, committee_ok }
        })
        .collect()
}

fn criterion4() -> Line {
    let cases = [(1, p(2, 1)), (2, p(2, 1)), (1, p(3, 1))];
    let reports: Vec<_> = cases.iter().map(|&(n, q)| verify_gadget_lemma(n, q).unwrap()).collect();
    let ok = reports.iter().all(|r| r.passed());
    let detail = reports
        .iter()
        .map(|r| format!("n̂={} p={}: min {} with {} minimizers", r.n_hat, r.p, r.min_cost, r.minimizers))
        .collect::<Vec<_>>()
        .join("; ");
    Line { id: 4, status: verdict(ok), detail }
}

fn diamond_graph() -> Graph {
    Graph::new(4, vec![(1, 2), (2, 4), (3, 4), (1, 3), (2, 3)]).unwrap()
}

fn criterion5() -> Line {
    let two = p(2, 1);
    let k3 = Graph::complete(3).unwrap();
    let out = reduce_3coloring(&k3, two, false).unwrap();
    let col = Coloring::new(vec![0, 1, 2]).unwrap();
    let s = coloring_to_centroid(&k3, &col, two, false).unwrap();
    let cost = p_power_cost(&s, &out.instance.set, two).unwrap();
    let back = centroid_to_coloring(&k3, &s, two).unwrap();
    let k3_ok = cost.exact_part() == Some(BigInt::from(3672))
        && out.instance.budget.as_rational() == Some(BigInt::from(3672).into())
        && back == col
        && back.is_proper(&k3);

    let g = diamond_graph();
    let fig = coloring_to_centroid(&g, &Coloring::new(vec![0, 1, 2, 0]).unwrap(), two, false).unwrap();
    let expected = format!("{}{}", "100010001100001001010010100", "0".repeat(9));
    let fig_ok = fig.to_string() == expected;
    Line {
        id: 5,
        status: verdict(k3_ok && fig_ok),
        detail: format!("K3 coloring cost {cost} against budget 3672, inverse proper; diamond row {fig}"),
    }
}

fn criterion6() -> Line {
    let out = reduce_3coloring(&Graph::complete(4).unwrap(), p(2, 1), false).unwrap();
    let rep = structured_minimum(&out).unwrap();
    Line {
        id: 6,
        status: verdict(rep.verdict == Verdict::Above && rep.candidates == 59_049),
        detail: format!(
            "K4: minimum {} over {} one-per-triple candidates, budget {} (lemma-assisted)",
            rep.min_cost,
            rep.candidates,
            out.instance.budget
        ),
    }
}

fn criterion7() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in [("K3", Graph::complete(3).unwrap()), ("diamond", diamond_graph())] {
        for q in [p(2, 1), p(3, 1), p(3, 2)] {
            let out = reduce_3coloring(&g, q, true).unwrap();
            let col = g.find_3coloring().unwrap();
            let s = coloring_to_centroid(&g, &col, q, true).unwrap();
            let cost = p_power_cost(&s, &out.instance.set, q).unwrap();
            let (n, m) = (g.vertex_count() as u64, g.edge_count() as u64);
            let n_hat = n + m;
            let (a, b) = (q.numer(), q.denom());
            let target = PowerSum::power_term(q, n_hat + 1, (1u64 << a) + (1u64 << (a - b)))
                .add(&PowerSum::power_term(q, 2 * n_hat, BigUint::from(2 * (n + 3 * m))));
            let good = out.instance.set.all_distinct()
                && cost.power_sum().same_value(&target)
                && out.instance.budget.power_budget().same_value(&target);
            ok &= good;
            parts.push(format!("{name} p={q}: {}", if good { "ok" } else { "mismatch" }));
        }
    }
    Line { id: 7, status: verdict(ok), detail: parts.join(", ") }
}

fn criterion10() -> Line {
    let mut parts = Vec::new();
    for (n, m) in [(14usize, 4usize), (18, 5), (22, 6)] {
        let spec = GenSpec::new(n, m, 7, GenMode::Planted { rho: 0.15 }).unwrap();
        let (set, _) = gen_planted(&spec).unwrap();
        let q = p(2, 1);
        let t = Instant::now();
        let opt = solve_bruteforce(&set, q).unwrap();
        let bf_ms = t.elapsed().as_secs_f64() * 1e3;
        let budget = budget_of(&opt.cost);
        let t = Instant::now();
        let _ = solve_searchtree(&set, q, &budget).unwrap();
        let st_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let _ = solve_typed_centroid(&set, q, &budget).unwrap();
        let ty_ms = t.elapsed().as_secs_f64() * 1e3;
        parts.push(format!("n={n} m={m}: bruteforce {bf_ms:.1} ms, searchtree {st_ms:.1} ms, typed-bb {ty_ms:.1} ms"));
    }
    Line {
        id: 10,
        status: Status::Info,
        detail: format!("asymptotic bounds are not measurable at this scale; timings {}", parts.join("; ")),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = vec![criterion1(), criterion2()];

    let corpus = corpus();
    let t = Instant::now();
    let rows = run_corpus(&corpus);
    let corpus_secs = t.elapsed().as_secs_f64();
    let agree = rows.iter().filter(|r| r.agree).count();
    lines.push(Line {
        id: 3,
        status: verdict(agree == rows.len()),
        detail: format!(
            "{agree}/{} seeded instances: dp, searchtree, dispatch and typed-bb match brute force exactly ({corpus_secs:.1} s for criteria 3, 8, 9)",
            rows.len()
        ),
    });
    lines.push(criterion4());
    lines.push(criterion5());
    lines.push(criterion6());
    lines.push(criterion7());

    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let s = sample();
    let sample_ratio = norm_ratio(
        &approx_factor2(&s, p(2, 1)).unwrap().cost,
        &solve_bruteforce(&s, p(2, 1)).unwrap().cost,
    );
    let expected = (69f64 / 56.0).sqrt();
    lines.push(Line {
        id: 8,
        status: verdict(max_ratio <= 2.0 && (sample_ratio - expected).abs() <= 1e-9),
        detail: format!("max corpus ratio {max_ratio:.4}; sample ratio {sample_ratio:.9} (sqrt(69/56) = {expected:.9})"),
    });

    let committee = rows.iter().filter(|r| r.committee_ok).count();
    lines.push(Line {
        id: 9,
        status: verdict(committee == rows.len()),
        detail: format!(
            "{committee}/{} instances: committee DP equals constrained brute force for every t and the best t gives the optimum",
            rows.len()
        ),
    });
    lines.push(criterion10());

    lines.sort_by_key(|l| l.id);
    let mut failed = false;
    for l in &lines {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed = true;
                "FAIL"
            }
            Status::Partial => "PARTIAL",
            Status::Info => "INFO",
        };
        println!("criterion {:>2}: {tag:<7} {}", l.id, l.detail);
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
