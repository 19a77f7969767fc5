//! End-to-end tests of the `subtree-stats` binary: subcommand behaviour,
//! exact output values, report determinism and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subtree-stats"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

fn write_tree(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_stats_pipeline_on_the_two_star_tree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two-stars.tree");
    let gen = run(&[
        "gen",
        "--family",
        "two-stars",
        "--params",
        "2,0",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "6\n0 1\n0 2\n0 3\n1 4\n1 5\n"
    );

    let out = run(&["stats", path.to_str().unwrap(), "--subtree", "0,2", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["density"], "21/40");
    assert_eq!(report["results"]["mean"], "41/10");
    assert_eq!(report["results"]["count"], "10");
    assert_eq!(report["command"], "stats");
}

#[test]
fn global_stats_of_the_two_vertex_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tree(dir.path(), "p2.tree", "2\n0 1\n");
    let out = run(&["stats", &path, "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["mean"], "4/3");
    assert_eq!(report["results"]["density"], "2/3");
}

#[test]
fn stats_on_the_whole_tree_reports_undefined_density() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tree(dir.path(), "p2.tree", "2\n0 1\n");
    let out = run(&["stats", &path, "--subtree", "0,1", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["mean"], "2/1");
    assert!(report["results"]["density"]
        .as_str()
        .unwrap()
        .starts_with("undefined"));
}

#[test]
fn extremal_and_density_max_report_optima() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tree(dir.path(), "t.tree", "6\n0 1\n0 2\n0 3\n1 4\n1 5\n");
    let out = run(&["extremal", &path, "--k", "2", "--max", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["value"], "41/10");
    assert_eq!(report["results"]["optima"].as_array().unwrap().len(), 4);

    let out = run(&["density-max", &path, "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["value"], "31/55");
    let optima = report["results"]["optima"].as_array().unwrap();
    assert_eq!(optima.len(), 4);
    assert!(optima
        .iter()
        .all(|o| o["structure"] == "LimbPath"));
}

#[test]
fn core_decomposition_of_a_path_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tree(dir.path(), "p4.tree", "4\n0 1\n1 2\n2 3\n");
    let out = run(&["core", &path, "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["results"]["degenerate_path"], true);
    assert_eq!(report["results"]["core"].as_array().unwrap().len(), 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tree(dir.path(), "t.tree", "6\n0 1\n0 2\n0 3\n1 4\n1 5\n");
    for args in [
        vec!["stats", path.as_str(), "--json"],
        vec!["density-max", path.as_str(), "--json"],
        vec!["verify", "--theorem", "half-index", "--max-n", "5", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_passes_and_respects_exit_codes() {
    let out = run(&["verify", "--theorem", "astral-bound", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("astral-bound: PASS"));

    let out = run(&["verify", "--all", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().filter(|l| l.contains(": PASS")).count() >= 19);
}

#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();
    // 2: parse errors
    let bad = write_tree(dir.path(), "bad.tree", "4\n0 1\n2 3\n");
    assert_eq!(run(&["stats", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.tree");
    assert_eq!(
        run(&["stats", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // 3: invalid arguments
    let good = write_tree(dir.path(), "good.tree", "3\n0 1\n1 2\n");
    assert_eq!(
        run(&["stats", &good, "--subtree", "0,2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["verify", "--theorem", "no-such-suite"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["gen", "--family", "wheel", "--params", "4"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["extremal", &good, "--k", "9", "--max"]).status.code(),
        Some(3)
    );
}

#[test]
fn guard_override_through_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p20.tree");
    assert!(run(&[
        "gen",
        "--family",
        "path",
        "--params",
        "20",
        "-o",
        path.to_str().unwrap()
    ])
    .status
    .success());
    // order 20 exceeds the default extremal guard of 16
    let refused = run(&["extremal", path.to_str().unwrap(), "--k", "2", "--max"]);
    assert_eq!(refused.status.code(), Some(3));
    let allowed = bin()
        .args(["extremal", path.to_str().unwrap(), "--k", "2", "--max", "--json"])
        .env("SUBTREE_MAX_ENUM", "24")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&allowed)).unwrap();
    // every proper subtree of a path has the same local mean at its order
    assert_eq!(report["results"]["optima"].as_array().unwrap().len(), 19);
}

#[test]
fn caterpillar_generation_takes_a_leg_list() {
    let out = run(&["gen", "--family", "caterpillar", "--params", "0,2,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5\n0 1\n1 2\n1 3\n1 4\n");
}
