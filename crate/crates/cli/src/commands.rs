use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use hdc_core::exact::{
    solve_bruteforce, solve_committee, solve_committee_bruteforce, solve_dispatch, solve_dispatch_with, solve_dp,
    solve_majority, solve_searchtree, solve_searchtree_with, DpConfig, SearchTreeConfig,
};
use hdc_core::generator::{gen_instance, GenMode, GenSpec};
use hdc_core::reduction::{
    centroid_to_coloring, check_cover, coloring_to_centroid, reduce_3coloring, structured_minimum,
    verify_gadget_lemma, Graph, STRUCTURED_MAX_NHAT,
};
use hdc_core::typed::{build_cnip, extract_types, solve_typed_centroid};
use hdc_core::{
    approx_factor2, norm_ratio, BinaryStringSet, CentroidResult, CostBudget, Decision, InstanceDraft,
    PExponent, PowerSum, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{load, parse_p, read_input, write_output};
use crate::{Algo, ExportArgs, GenArgs, InputArgs, Mode, ReduceArgs, SolveArgs, TrialArgs, VerifySuite};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNDECIDED: u8 = 3;

enum Outcome {
    /// Best possible centroid (no budget was given).
    Optimal(CentroidResult),
    Feasible(CentroidResult),
    Infeasible,
    Indeterminate(CentroidResult),
    /// Heuristic output without a certificate either way.
    Approximate(CentroidResult),
    /// Heuristic output above the budget; says nothing about feasibility.
    ExceedsBudget(CentroidResult),
}

/// A budget every centroid meets: `m · n^p`.
fn trivial_budget(set: &BinaryStringSet, p: PExponent) -> CostBudget {
    CostBudget::from_power_sum(PowerSum::power_term(p, set.n() as u64, set.m() as u64))
}

fn from_decision(d: Decision, optimizing: bool) -> Outcome {
    match d {
        Decision::Feasible(r) if optimizing => Outcome::Optimal(r),
        Decision::Feasible(r) => Outcome::Feasible(r),
        Decision::Infeasible => Outcome::Infeasible,
        Decision::Indeterminate(r) => Outcome::Indeterminate(r),
    }
}

fn run_solver(args: &SolveArgs, set: &BinaryStringSet, p: PExponent, budget: Option<&CostBudget>) -> Result<Outcome> {
    let dp_config = DpConfig::from_env();
    if p.is_one() {
        if args.t.is_some() {
            bail!("committee mode needs p > 1");
        }
        // Column majority is optimal for p = 1 whatever the algorithm flag says.
        let r = solve_majority(set)?;
        return Ok(match budget {
            None => Outcome::Optimal(r),
            Some(b) => from_decision(Decision::from_best(Some(r), b), false),
        });
    }
    if let Some(t) = args.t {
        let optimizing = budget.is_none();
        let fallback = trivial_budget(set, p);
        let b = budget.unwrap_or(&fallback);
        return match args.algo {
            Algo::Auto | Algo::Dp => Ok(from_decision(solve_committee(set, p, b, t, &dp_config)?, optimizing)),
            Algo::Bruteforce => {
                let r = solve_committee_bruteforce(set, p, t)?;
                Ok(from_decision(Decision::from_best(Some(r), b), optimizing))
            }
            other => bail!("--t is supported with --algo auto, dp or bruteforce, not {other:?}"),
        };
    }
    let approx = || approx_factor2(set, p);
    Ok(match (args.algo, budget) {
        (Algo::Approx2, None) => Outcome::Approximate(approx()?),
        (Algo::Approx2, Some(b)) => {
            let r = approx()?;
            match r.verdict(b) {
                Verdict::Below => Outcome::Feasible(r),
                Verdict::Above => Outcome::ExceedsBudget(r),
                Verdict::Indeterminate => Outcome::Indeterminate(r),
            }
        }
        (Algo::Bruteforce, None) => Outcome::Optimal(solve_bruteforce(set, p)?),
        (Algo::Bruteforce, Some(b)) => from_decision(Decision::from_best(Some(solve_bruteforce(set, p)?), b), false),
        (Algo::TypedBb, b) => {
            let fallback = trivial_budget(set, p);
            from_decision(solve_typed_centroid(set, p, b.unwrap_or(&fallback))?, b.is_none())
        }
        (algo, b) => {
            // Without a budget the best input string's cost is one every solver can meet.
            let fallback = b.is_none().then(|| approx().map(|r| CostBudget::from_power_sum(r.cost.power_sum().clone())));
            let fallback = fallback.transpose()?;
            let b = b.or(fallback.as_ref()).expect("one of the two is set");
            let optimizing = budget.is_none() && !args.first_hit;
            let d = match algo {
                Algo::Dp => solve_dp(set, p, b, &dp_config)?,
                Algo::Searchtree => {
                    let config = SearchTreeConfig { first_hit: args.first_hit, progress: None };
                    solve_searchtree_with(set, p, b, &config)?
                }
                _ => solve_dispatch_with(set, p, b, &dp_config)?,
            };
            from_decision(d, optimizing)
        }
    })
}

pub fn solve(args: &SolveArgs) -> Result<u8> {
    let (set, p, file_budget) = load(&args.input.input, args.input.p.as_deref(), true)?;
    let budget = match (&args.k, &args.kp) {
        (Some(k), _) => Some(CostBudget::from_norm(p, k).context("--k")?),
        (_, Some(kp)) => Some(CostBudget::parse_power(p, kp).context("--kp")?),
        _ => file_budget,
    };
    if args.first_hit && !matches!(args.algo, Algo::Searchtree) {
        bail!("--first-hit only applies to --algo searchtree");
    }
    let start = Instant::now();
    let outcome = run_solver(args, &set, p, budget.as_ref())?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, result, code) = match &outcome {
        Outcome::Optimal(r) => ("optimal", Some(r), EXIT_OK),
        Outcome::Feasible(r) => ("feasible", Some(r), EXIT_OK),
        Outcome::Approximate(r) => ("approximate", Some(r), EXIT_OK),
        Outcome::Infeasible => ("infeasible", None, EXIT_NO),
        Outcome::ExceedsBudget(r) => ("exceeds-budget", Some(r), EXIT_NO),
        Outcome::Indeterminate(r) => ("indeterminate", Some(r), EXIT_UNDECIDED),
    };
    let mut out = match result {
        Some(r) => r.to_json(ms),
        None => json!({ "centroid": null, "runtime_ms": ms }),
    };
    let obj = out.as_object_mut().expect("result JSON is an object");
    obj.insert("status".into(), json!(status));
    obj.insert("p".into(), json!(p.to_string()));
    obj.insert("budget".into(), budget.as_ref().map_or(Value::Null, |b| json!(b.to_string())));
    obj.insert("n".into(), json!(set.n()));
    obj.insert("m".into(), json!(set.m()));
    if let Some(t) = args.t {
        obj.insert("t".into(), json!(t));
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(code)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_input(path)?;
    Graph::parse(&text).with_context(|| format!("{}", path.display()))
}

pub fn reduce(args: &ReduceArgs) -> Result<u8> {
    let graph = load_graph(&args.graph)?;
    let p = parse_p(&args.p, false)?;
    let out = reduce_3coloring(&graph, p, args.distinct)?;
    write_output(args.out.as_deref(), &out.instance.to_text())?;
    let roles_path: Option<PathBuf> = args.roles.clone().or_else(|| {
        args.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".roles.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = &roles_path {
        write_output(Some(path), &serde_json::to_string_pretty(&out.role_map_json())?)?;
    }
    let summary = json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "n_hat": out.n_hat,
        "strings": out.instance.set.m(),
        "length": out.instance.set.n(),
        "p": p.to_string(),
        "budget": out.instance.budget.to_string(),
        "distinct": out.distinct,
        "instance": args.out.as_ref().map(|p| p.display().to_string()),
        "role_map": roles_path.map(|p| p.display().to_string()),
    });
    // Keep stdout clean for the instance when it goes there.
    if args.out.is_some() {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        eprintln!("{summary}");
    }
    Ok(EXIT_OK)
}

struct Report {
    all_passed: bool,
}

impl Report {
    fn new() -> Self {
        Report { all_passed: true }
    }

    fn line(&mut self, ok: bool, name: &str, detail: impl AsRef<str>) {
        self.all_passed &= ok;
        println!("{} {name}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    }

    fn code(&self) -> u8 {
        if self.all_passed {
            EXIT_OK
        } else {
            EXIT_NO
        }
    }
}

fn trial_instances(args: &TrialArgs) -> Result<Vec<(BinaryStringSet, PExponent)>> {
    anyhow::ensure!(args.nmax >= 1 && args.mmax >= 1, "--nmax and --mmax must be at least 1");
    anyhow::ensure!(args.nmax <= 20, "--nmax above 20 makes brute force too slow for a trial run");
    let ps = args.p.iter().map(|s| parse_p(s, false)).collect::<Result<Vec<_>>>()?;
    anyhow::ensure!(!ps.is_empty(), "no exponents given");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    (0..args.trials)
        .map(|i| {
            let (n, m) = (rng.gen_range(1..=args.nmax), rng.gen_range(1..=args.mmax));
            let spec = GenSpec::new(n, m, rng.gen(), GenMode::Uniform)?;
            Ok((hdc_core::generator::gen_uniform(&spec)?, ps[i % ps.len()]))
        })
        .collect()
}

fn same_cost(a: &CentroidResult, b: &CentroidResult) -> bool {
    a.cost.power_sum().same_value(b.cost.power_sum())
}

fn verify_oracle(args: &TrialArgs) -> Result<u8> {
    let trials = trial_instances(args)?;
    let names = ["dp", "searchtree", "dispatch", "typed-bb"];
    let mut agree = [0usize; 4];
    let mut same_string = [0usize; 4];
    for (set, p) in &trials {
        let opt = solve_bruteforce(set, *p)?;
        let budget = CostBudget::from_power_sum(opt.cost.power_sum().clone());
        let runs = [
            solve_dp(set, *p, &budget, &DpConfig::from_env())?,
            solve_searchtree(set, *p, &budget)?,
            solve_dispatch(set, *p, &budget)?,
            solve_typed_centroid(set, *p, &budget)?,
        ];
        for (k, d) in runs.into_iter().enumerate() {
            if let Decision::Feasible(r) = d {
                if same_cost(&r, &opt) {
                    agree[k] += 1;
                    same_string[k] += usize::from(r.centroid == opt.centroid);
                }
            }
        }
    }
    let total = trials.len();
    let mut rep = Report::new();
    for k in 0..4 {
        rep.line(
            agree[k] == total,
            &format!("{} optimal cost", names[k]),
            format!("{}/{total} match brute force", agree[k]),
        );
        rep.line(
            same_string[k] == total,
            &format!("{} tie-break", names[k]),
            format!("{}/{total} return the lexicographically smallest optimum", same_string[k]),
        );
    }
    Ok(rep.code())
}

fn verify_approx(args: &TrialArgs) -> Result<u8> {
    let trials = trial_instances(args)?;
    let mut max_ratio: f64 = 0.0;
    let mut in_set = 0;
    for (set, p) in &trials {
        let a = approx_factor2(set, *p)?;
        let opt = solve_bruteforce(set, *p)?;
        max_ratio = max_ratio.max(norm_ratio(&a.cost, &opt.cost));
        in_set += usize::from(set.strings().contains(&a.centroid));
    }
    let mut rep = Report::new();
    rep.line(max_ratio <= 2.0, "approx ratio", format!("max ratio {max_ratio:.6} over {} trials (bound 2)", trials.len()));
    rep.line(in_set == trials.len(), "approx output", format!("{in_set}/{} outputs are input strings", trials.len()));
    Ok(rep.code())
}

fn verify_reduction(graph_path: &Path, p: &str, distinct: bool) -> Result<u8> {
    let graph = load_graph(graph_path)?;
    let p = parse_p(p, false)?;
    let out = reduce_3coloring(&graph, p, distinct)?;
    let mut rep = Report::new();
    if distinct {
        rep.line(out.instance.set.all_distinct(), "distinct strings", format!("{} strings", out.instance.set.m()));
    }
    match graph.find_3coloring() {
        Some(col) => {
            let s = coloring_to_centroid(&graph, &col, p, distinct)?;
            let cover = check_cover(&out, &s)?;
            rep.line(
                cover.covered_once == cover.checked,
                "covers exactly once",
                format!("{}/{} vertex and edge strings", cover.covered_once, cover.checked),
            );
            rep.line(
                cover.pair_cost_ok == cover.pairs,
                "pair cost",
                format!("{}/{} pairs cost exactly 2(2n̂)^p", cover.pair_cost_ok, cover.pairs),
            );
            rep.line(cover.cost_equals_budget, "cost equals budget", format!("budget {}", out.instance.budget));
            let back = centroid_to_coloring(&graph, &s, p)?;
            rep.line(back == col && back.is_proper(&graph), "inverse map", format!("colors {:?}", back.colors));
        }
        None if out.n_hat <= STRUCTURED_MAX_NHAT => {
            let st = structured_minimum(&out)?;
            rep.line(
                st.verdict == Verdict::Above,
                "no structured centroid within budget",
                format!(
                    "graph is not 3-colorable; minimum {} over {} one-per-triple candidates, budget {}",
                    st.min_cost, st.candidates, out.instance.budget
                ),
            );
        }
        None => bail!("graph is not 3-colorable and n + m = {} is too large for structured enumeration", out.n_hat),
    }
    Ok(rep.code())
}

pub fn verify(suite: &VerifySuite) -> Result<u8> {
    match suite {
        VerifySuite::Gadget { nhat, p } => {
            let p = parse_p(p, false)?;
            let r = verify_gadget_lemma(*nhat, p)?;
            let mut rep = Report::new();
            rep.line(r.cost_matches, "gadget minimum", format!("min {} (expected {})", r.min_cost, r.expected_cost));
            rep.line(
                r.set_matches,
                "gadget minimizers",
                format!("{} minimizers (expected {})", r.minimizers, r.expected_minimizers),
            );
            Ok(rep.code())
        }
        VerifySuite::Oracle(args) => verify_oracle(args),
        VerifySuite::Approx(args) => verify_approx(args),
        VerifySuite::Reduction { graph, p, distinct } => verify_reduction(graph, p, *distinct),
    }
}

pub fn generate(args: &GenArgs) -> Result<u8> {
    let p = parse_p(&args.p, false)?;
    let mode = match args.mode {
        Mode::Uniform => GenMode::Uniform,
        Mode::Planted => GenMode::Planted { rho: args.rho },
        Mode::Reduction => GenMode::ReductionDerived { distinct: args.distinct },
    };
    let spec = GenSpec::new(args.n, args.m, args.seed, mode)?;
    let g = gen_instance(&spec, p)?;
    let mut text = format!("# hdc gen --mode {:?} --n {} --m {} --seed {}\n", args.mode, args.n, args.m, args.seed)
        .to_lowercase();
    if let Some(c) = &g.planted {
        text.push_str(&format!("# planted {c}\n"));
    }
    if let Some(graph) = &g.graph {
        for line in graph.to_text().lines() {
            text.push_str(&format!("# graph {line}\n"));
        }
    }
    text.push_str(&g.instance.to_text());
    write_output(args.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn load_set(args: &InputArgs) -> Result<BinaryStringSet> {
    if args.p.is_some() {
        return Ok(load(&args.input, args.p.as_deref(), true)?.0);
    }
    let text = read_input(&args.input)?;
    if text.trim_start().starts_with('{') {
        return Ok(hdc_core::Instance::from_json(&text)?.set);
    }
    Ok(InstanceDraft::parse(&text, true).with_context(|| format!("{}", args.input.display()))?.set)
}

pub fn types(args: &InputArgs) -> Result<u8> {
    let profile = extract_types(&load_set(args)?);
    let out = json!({
        "num_types": profile.num_types(),
        "m": profile.m(),
        "n": profile.n(),
        "types": profile.types,
        "counts": profile.counts,
        "column_map": profile.column_map,
        "ones_per_string": profile.ones_per_string,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(EXIT_OK)
}

pub fn export_cnip(args: &ExportArgs) -> Result<u8> {
    let (set, p, _) = load(&args.input.input, args.input.p.as_deref(), false)?;
    let model = build_cnip(&extract_types(&set), p)?;
    write_output(args.out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&model.to_json())?))?;
    Ok(EXIT_OK)
}
