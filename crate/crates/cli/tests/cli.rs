//! End-to-end tests of the `ultragraph` binary: exit codes, report
//! contents, determinism, and golden outputs.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn ultragraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ultragraph"))
        .args(args)
        .env_remove("ULTRAGRAPH_WINDOW")
        .output()
        .expect("binary runs")
}

fn parse(output: &Output) -> Value {
    assert!(
        output.stderr.is_empty(),
        "unexpected stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn analyze_tabulates_growing_complete_edge_counts() {
    let cfg = fixture("growing_complete.json");
    let out = ultragraph(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report = parse(&out);
    assert_eq!(report["window"], 8);
    assert_eq!(report["connected"], "in");
    assert_eq!(report["counts"]["identity_holds"], true);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for (n, row) in rows.iter().enumerate() {
        let m = n as u64 + 3;
        assert_eq!(row["vertices"].as_u64(), Some(m));
        assert_eq!(row["edges"].as_u64(), Some(m * (m - 1) / 2));
    }
}

#[test]
fn analyze_constant_family_rows_are_identical() {
    let cfg = fixture("constant_k4.json");
    let out = ultragraph(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report = parse(&out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let mut expected = rows[0].clone();
        expected["n"] = row["n"].clone();
        assert_eq!(*row, expected);
    }
    assert_eq!(report["counts"]["vertices"]["standard_value"], 4);
    assert_eq!(report["eulerian"], false);
}

#[test]
fn malformed_config_exits_two() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{\"family\":").unwrap();
    let out = ultragraph(&["analyze", "--config", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = ultragraph(&["analyze", "--config", "/nonexistent/config.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_theorem_id_is_a_usage_error() {
    let cfg = fixture("growing_cycle.json");
    let out =
        ultragraph(&["transfer", "--config", cfg.to_str().unwrap(), "--theorem", "four_color"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn transfer_on_growing_cycles_matches_known_decisions() {
    let cfg = fixture("growing_cycle.json");
    let out = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report = parse(&out);
    let reports = report["reports"].as_array().unwrap();
    let decisions: Vec<(&str, &str)> = reports
        .iter()
        .map(|r| (r["theorem"].as_str().unwrap(), r["decision"].as_str().unwrap()))
        .collect();
    assert_eq!(
        decisions,
        vec![
            ("cyclomatic_identity", "in"),
            ("edge_bounds", "in"),
            ("radius_diameter", "in"),
            ("euler_even_degree", "in"),
            ("dirac_criterion", "out"),
            ("ore_criterion", "out"),
            ("posa_criterion", "out"),
            ("coloring_max_deg", "in"),
        ]
    );
    assert_eq!(reports[7]["parameter"], 2);
}

#[test]
fn transfer_reports_are_byte_identical_across_runs() {
    let cfg = fixture("growing_cycle.json");
    let first = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    let second = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn euler_decision_follows_the_ultrafilter_point() {
    let cfg = fixture("euler_only.json");
    let zero = parse(&ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]));
    assert_eq!(zero["reports"][0]["decision"], "in");

    let point = fixture("point_residue1.json");
    let odd = parse(&ultragraph(&[
        "transfer",
        "--config",
        cfg.to_str().unwrap(),
        "--point",
        point.to_str().unwrap(),
    ]));
    assert_eq!(odd["reports"][0]["decision"], "out");
}

#[test]
fn empty_theorem_list_yields_an_empty_report() {
    let cfg = fixture("no_theorems.json");
    let out = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let report = parse(&out);
    assert_eq!(report["reports"].as_array().unwrap().len(), 0);
    assert_eq!(report["preconditions_met"], true);
}

#[test]
fn strict_mode_turns_undecided_into_exit_three() {
    let cfg = fixture("mixed_parity_euler.json");
    let lax = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&lax), 0);
    assert_eq!(parse(&lax)["reports"][0]["decision"], "undecided");

    let strict = ultragraph(&["transfer", "--config", cfg.to_str().unwrap(), "--strict"]);
    assert_eq!(exit_code(&strict), 3);
}

#[test]
fn precondition_failures_exit_one() {
    let cfg = fixture("infinite_path.json");
    let out = ultragraph(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let report = parse(&out);
    assert_eq!(report["preconditions_met"], false);
    assert_eq!(report["connected"], "in");

    let out = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn window_resolution_prefers_flag_then_env_then_config() {
    let cfg = fixture("growing_complete.json"); // config says 8
    let flag = Command::new(env!("CARGO_BIN_EXE_ultragraph"))
        .args(["analyze", "--config", cfg.to_str().unwrap(), "--window", "12"])
        .env("ULTRAGRAPH_WINDOW", "16")
        .output()
        .unwrap();
    assert_eq!(parse(&flag)["window"], 12);

    let env = Command::new(env!("CARGO_BIN_EXE_ultragraph"))
        .args(["analyze", "--config", cfg.to_str().unwrap()])
        .env("ULTRAGRAPH_WINDOW", "16")
        .output()
        .unwrap();
    assert_eq!(parse(&env)["window"], 16);

    let cfg_only = ultragraph(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert_eq!(parse(&cfg_only)["window"], 8);

    let invalid = ultragraph(&["analyze", "--config", cfg.to_str().unwrap(), "--window", "4"]);
    assert_eq!(exit_code(&invalid), 2);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let cfg = fixture("growing_cycle.json");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let filed = ultragraph(&["transfer", "--config", cfg.to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&filed), 0);
    assert!(filed.stdout.is_empty());
    let streamed = ultragraph(&["transfer", "--config", cfg.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), streamed.stdout);
}

#[test]
fn walkthrough_confirms_the_construction() {
    let out = ultragraph(&["example21"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse(&out);
    assert_eq!(report["all_as_expected"], true);
    for case in report["cases"].as_array().unwrap() {
        assert_eq!(case["consecutive_offset_is_edge"], true);
        assert_eq!(case["constant_offset_two_is_edge"], false);
        assert_eq!(case["growing_offset_is_edge"], false);
        assert_eq!(case["classes_pairwise_distinct"], true);
    }
}

#[test]
fn reports_match_the_golden_files() {
    for (args, name) in [
        (vec!["analyze", "--config"], "analyze_constant_k4.json"),
        (vec!["transfer", "--config"], "transfer_euler_only.json"),
    ] {
        let cfg = if name.starts_with("analyze") {
            fixture("constant_k4.json")
        } else {
            fixture("euler_only.json")
        };
        let mut full = args.clone();
        full.push(cfg.to_str().unwrap());
        let out = ultragraph(&full);
        assert_eq!(exit_code(&out), 0, "{name}");
        let expected = std::fs::read(golden(name)).expect("golden file");
        assert_eq!(out.stdout, expected, "{name} drifted from its golden output");
    }

    let out = ultragraph(&["example21"]);
    let expected = std::fs::read(golden("example21.json")).expect("golden file");
    assert_eq!(out.stdout, expected, "example21 drifted from its golden output");
}
