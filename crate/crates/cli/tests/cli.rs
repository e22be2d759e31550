use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterforge")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterforge")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Writes Q1, Q2, S1, S2 of type A2 into `dir`.
fn a2_modules(dir: &Path) {
    for v in ["1", "2"] {
        let out = dir.join(format!("q{v}.json"));
        assert!(run(&["prepmod", "injective", "--type", "A2", "--vertex", v, "--out", p(&out)]).status.success());
    }
    // S2 = E_1(Q2), S1 = E_2(Q1)
    for (src, letter, dst) in [("q2", "1", "s2"), ("q1", "2", "s1")] {
        let (src, dst) = (dir.join(format!("{src}.json")), dir.join(format!("{dst}.json")));
        assert!(run(&["prepmod", "efunctor", "--module", p(&src), "--word", letter, "--out", p(&dst)])
            .status
            .success());
    }
}

#[test]
fn text_output_starts_with_rng_seed() {
    let o = run(&["--rng-seed", "42", "cluster", "mutate", "--seed", "builtin:grassmannian_2_5", "--direction", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("rng-seed: 42\n"));
}

#[test]
fn gr25_mutation_golden() {
    let v = json(&["cluster", "mutate", "--seed", "builtin:grassmannian_2_5", "--direction", "1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rng_seed"], 0);
    assert_eq!(v["command"], "cluster mutate");
    let new = &v["result"]["new_variables"][0];
    assert_eq!(new["position"], "y1*");
    assert_eq!(new["value"], "y1^-1*y2*y4 + y1^-1*y3*y5");
    let expected = serde_json::json!([[0, 1], [-1, 0], [1, -1], [-1, 0], [1, 0], [0, -1], [0, 1]]);
    assert_eq!(v["result"]["matrix"], expected);
}

#[test]
fn mutate_writes_a_reloadable_seed() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("seed.json");
    let o = run(&["cluster", "mutate", "--seed", "builtin:grassmannian_2_5", "--direction", "1", "--out", p(&seed)]);
    assert!(o.status.success());
    // mutating back in the same direction is an involution
    let v = json(&["cluster", "mutate", "--seed", p(&seed), "--direction", "1"]);
    assert_eq!(v["result"]["new_variables"][0]["value"], "y1");
}

#[test]
fn quadric_exploration_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("graph.dot");
    let v = json(&["cluster", "explore", "--seed", "builtin:quadric", "--n", "5", "--dot", p(&dot)]);
    assert_eq!(v["result"]["exhausted"], true);
    assert_eq!(v["result"]["cluster_count"], 8);
    assert_eq!(v["result"]["cluster_variable_count"], 6);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.contains("graph") && text.contains("--"));
}

#[test]
fn finite_type_of_gr25() {
    let v = json(&["cluster", "finite-type", "--seed", "builtin:grassmannian_2_5"]);
    assert_eq!(v["result"]["finite"], true);
    assert_eq!(v["result"]["cluster_count"], 5);
}

#[test]
fn module_file_round_trip_through_efunctor_and_ext() {
    let dir = tempfile::tempdir().unwrap();
    a2_modules(dir.path());
    let s1 = dir.path().join("s1.json");
    let s2 = dir.path().join("s2.json");
    let v = json(&["prepmod", "ext", "--m", p(&s1), "--n", p(&s2)]);
    assert_eq!(v["result"]["ext1_dim"], 1);
    let v = json(&["prepmod", "rigid", "--module", p(&s1)]);
    assert_eq!(v["result"]["rigid"], true);
    let q1 = dir.path().join("q1.json");
    let v = json(&["prepmod", "hom", "--m", p(&s1), "--n", p(&q1)]);
    assert_eq!(v["result"]["hom_dim"], 1);
}

#[test]
fn d4_rigid_construction_and_exchange_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--type", "D4", "--K", "1,2,3", "--word", "1,2,3,1,2,3,4,3,1,2,3,4"];
    let mut build = vec!["prepmod", "build-rigid"];
    build.extend_from_slice(&args);
    let out_dir = dir.path().join("summands");
    build.extend_from_slice(&["--out-dir", p(&out_dir)]);
    let v = json(&build);
    assert_eq!(v["result"]["rigid"], true);
    assert_eq!(std::fs::read_dir(&out_dir).unwrap().count(), 6);

    let mut ex = vec!["prepmod", "exchange-matrix", "--sequences", "builtin:d4-example"];
    ex.extend_from_slice(&args);
    let v = json(&ex);
    assert_eq!(v["result"]["matrix"].as_array().unwrap().len(), 6);
}

#[test]
fn phi_eval_and_chi() {
    let dir = tempfile::tempdir().unwrap();
    a2_modules(dir.path());
    let v = json(&["phi", "eval", "--module", p(&dir.path().join("s1.json")), "--word", "1,2,1"]);
    assert_eq!(v["result"]["polynomial"], "t1 + t3");
    let v = json(&["phi", "chi", "--module", p(&dir.path().join("q1.json")), "--type", "1,2"]);
    assert_eq!(v["result"]["value"], "1");
}

#[test]
fn multiplication_identity_from_files() {
    let dir = tempfile::tempdir().unwrap();
    a2_modules(dir.path());
    let f = |n: &str| dir.path().join(format!("{n}.json"));
    let (s1, s2, q1, q2) = (f("s1"), f("s2"), f("q1"), f("q2"));
    let ok = run(&["phi", "verify", "--m", p(&s1), "--n", p(&s2), "--x", p(&q1), "--y", p(&q2), "--word", "1,2,1"]);
    assert_eq!(ok.status.code(), Some(0));
    // wrong middle terms: verification failure
    let bad = run(&["phi", "verify", "--m", p(&s1), "--n", p(&s2), "--x", p(&s1), "--y", p(&s2), "--word", "1,2,1"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("FAILS"));
}

#[test]
fn positivity_of_d4_rigid_modules() {
    let v = json(&["--rng-seed", "7", "phi", "positivity", "--rigid", "d4-example", "--random", "2"]);
    assert_eq!(v["result"]["all_positive"], true);
    assert_eq!(v["result"]["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_input_exits_2() {
    let o = run(&["prepmod", "injective", "--type", "Q9", "--vertex", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    let o = run(&["prepmod", "rigid", "--module", p(&junk)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--json", "cluster", "mutate", "--seed", "builtin:grassmannian_2_5", "--direction", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["exit_code"], 2);
}

#[test]
fn memory_budget_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    a2_modules(dir.path());
    let q1 = dir.path().join("q1.json");
    let o = run_env(&["phi", "eval", "--module", p(&q1), "--word", "1,2,1"], "CLUSTERFORGE_MAX_MEM", "1");
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn golden_suite_passes() {
    let o = run(&["verify", "all", "--suite", "paper-golden"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args =
        ["--json", "--rng-seed", "3", "phi", "positivity", "--rigid", "d4-example", "--choice", "2", "--random", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--json", "verify", "all"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
