use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SAMPLE: &str = "p 2/1\n1111111\n1111000\n0000100\n0000010\n0000001\n";
const TRIANGLE: &str = "n 3 m 3\ne 1 2\ne 2 3\ne 1 3\n";

fn hdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdc")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_sample_bruteforce() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["solve", &f, "--algo", "bruteforce", "--p", "2/1"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["centroid"], "0011000");
    assert_eq!(j["cost_exact"], "56");
    assert_eq!(j["status"], "optimal");
    assert_eq!(j["algorithm"], "bruteforce");
}

#[test]
fn every_algorithm_finds_the_sample_optimum() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    for algo in ["auto", "dp", "searchtree", "typed-bb"] {
        let out = hdc(&["solve", &f, "--algo", algo, "--kp", "56"]);
        assert_eq!(out.status.code(), Some(0), "{algo}");
        let j = stdout_json(&out);
        assert_eq!(j["centroid"], "0011000", "{algo}");
        assert_eq!(j["status"], "feasible", "{algo}");
    }
}

#[test]
fn budget_below_optimum_exits_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["solve", &f, "--kp", "55"]);
    assert_eq!(out.status.code(), Some(1));
    let j = stdout_json(&out);
    assert_eq!(j["status"], "infeasible");
    assert!(j["centroid"].is_null());

    // Norm budgets: 7.4^2 = 54.76 < 56 <= 7.5^2.
    assert_eq!(hdc(&["solve", &f, "--k", "7.4"]).status.code(), Some(1));
    assert_eq!(hdc(&["solve", &f, "--k", "15/2"]).status.code(), Some(0));
}

#[test]
fn file_budget_is_used() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", &format!("{SAMPLE}kp 56\n"));
    let out = hdc(&["solve", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["budget"], "56");
}

#[test]
fn malformed_length_exits_two_with_line_number() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "p 2/1\n0101\n011\n");
    let out = hdc(&["solve", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn approx2_reports_approximate() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["solve", &f, "--algo", "approx2"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["status"], "approximate");
    assert_eq!(j["cost_exact"], "69");
}

#[test]
fn committee_and_majority() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["solve", &f, "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["centroid"].as_str().unwrap().matches('1').count(), 3);
    let bf = stdout_json(&hdc(&["solve", &f, "--t", "3", "--algo", "bruteforce"]));
    assert_eq!(j["centroid"], bf["centroid"]);
    assert_eq!(j["cost_exact"], bf["cost_exact"]);

    let out = hdc(&["solve", &f, "--p", "1"]);
    assert_eq!(out.status.code(), Some(2), "file says p = 2");
    let g = write(&dir, "plain.txt", "1111111\n1111000\n0000100\n0000010\n0000001\n");
    let out = hdc(&["solve", &g, "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["algorithm"], "majority");
}

#[test]
fn first_hit_is_feasible() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["solve", &f, "--algo", "searchtree", "--first-hit", "--kp", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert!(j["cost"].as_f64().unwrap() <= 60.0);
    assert_eq!(hdc(&["solve", &f, "--first-hit"]).status.code(), Some(2));
}

#[test]
fn reduce_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", TRIANGLE);
    let inst = dir.path().join("k3.inst");
    let out = hdc(&["reduce", &g, "--p", "2/1", "--out", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["strings"], 27);
    assert_eq!(j["length"], 24);
    assert_eq!(j["budget"], "3672");
    let roles: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("k3.inst.roles.json")).unwrap()).unwrap();
    assert!(roles.to_string().contains("vertex-s_1"));
}

#[test]
fn reduce_distinct_adds_columns() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", TRIANGLE);
    let out = hdc(&["reduce", &g, "--p", "2/1", "--distinct", "--out", dir.path().join("d.inst").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["length"], 24 + 2 + 2);
    let text = fs::read_to_string(dir.path().join("d.inst")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.chars().all(|c| c == '0' || c == '1') && !l.is_empty()).collect();
    let mut uniq = rows.clone();
    uniq.sort();
    uniq.dedup();
    assert_eq!(uniq.len(), rows.len());
}

#[test]
fn reduce_rejects_self_loop() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "loop.txt", "n 2 m 1\ne 1 1\n");
    assert_eq!(hdc(&["reduce", &g, "--p", "2/1"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = hdc(&["verify", "gadget", "--nhat", "1", "--p", "2/1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("min 6"));

    let out = hdc(&["verify", "oracle", "--trials", "20", "--nmax", "8", "--mmax", "4", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    let out = hdc(&["verify", "approx", "--trials", "20", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("max ratio"));

    assert_eq!(hdc(&["verify", "oracle", "--trials", "5"]).status.code(), Some(2), "seed is required");
}

#[test]
fn verify_reduction_on_colorable_and_uncolorable_graphs() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", TRIANGLE);
    let out = hdc(&["verify", "reduction", &g]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let k4 = write(&dir, "k4.txt", "n 4 m 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let out = hdc(&["verify", "reduction", &k4]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("not 3-colorable"));
}

#[test]
fn gen_is_deterministic_and_needs_a_seed() {
    let a = hdc(&["gen", "--n", "10", "--m", "5", "--seed", "9"]);
    let b = hdc(&["gen", "--n", "10", "--m", "5", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = hdc(&["gen", "--n", "10", "--m", "5", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(hdc(&["gen", "--n", "10", "--m", "5"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("planted.txt");
    let out = hdc(&["gen", "--n", "12", "--m", "6", "--seed", "1", "--mode", "planted", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(hdc(&["solve", path.to_str().unwrap()]).status.code(), Some(0), "planted budget is met");
}

#[test]
fn types_and_cnip_export() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = hdc(&["types", &f]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["m"], 5);
    assert_eq!(j["n"], 7);
    assert_eq!(j["num_types"], 4);

    let path = dir.path().join("model.json");
    let out = hdc(&["export-cnip", &f, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let model: Value = serde_json::from_str(&fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert!(model.is_object());
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.txt");
    hdc(&["gen", "--n", "14", "--m", "6", "--seed", "21", "--out", path.to_str().unwrap()]);
    let strip = |o: Output| {
        let mut j = stdout_json(&o);
        j.as_object_mut().unwrap().remove("runtime_ms");
        j
    };
    let one = strip(hdc(&["--threads", "1", "solve", path.to_str().unwrap(), "--algo", "dp"]));
    let four = strip(hdc(&["--threads", "4", "solve", path.to_str().unwrap(), "--algo", "dp"]));
    assert_eq!(one, four);
}
