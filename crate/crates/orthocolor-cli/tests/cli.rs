//! End-to-end tests of the binary: exit codes, report schema, determinism,
//! and the raw export formats.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthocolor"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("write temp file");
    // Leak the dir so the file outlives this helper; the OS cleans up.
    std::mem::forget(dir);
    path
}

/// Checks the envelope against docs/report-schema.json by hand: exactly the
/// six keys, valid verdict, object-typed inputs/statistics.
fn assert_schema(report: &Value, command: &str) {
    let obj = report.as_object().expect("report is an object");
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        vec!["command", "inputs", "seed", "statistics", "verdict", "witnesses"]
    );
    assert_eq!(report["command"], command);
    assert!(report["inputs"].is_object());
    assert!(report["statistics"].is_object());
    let verdict = report["verdict"].as_str().unwrap();
    assert!(["ok", "refuted", "error"].contains(&verdict));
    assert!(report["seed"].is_null() || report["seed"].is_u64());
}

fn assert_verdict_matches_exit(out: &Output) {
    let report = stdout_json(out);
    let expected = match report["verdict"].as_str().unwrap() {
        "ok" => 0,
        "refuted" => 1,
        _ => 2,
    };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn chromatic_builtin_reports_k4() {
    let out = run(&["chromatic", "--builtin", "decorte13"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "chromatic");
    assert_eq!(report["witnesses"]["k"], 4);
    assert_eq!(report["statistics"]["edge_count"], 24);
    assert_eq!(report["witnesses"]["coloring"].as_array().unwrap().len(), 13);
    assert_verdict_matches_exit(&out);
}

#[test]
fn chromatic_empty_file_is_a_usage_error() {
    let path = write_temp("empty.txt", "# nothing here\n");
    let out = run(&["chromatic", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_schema(&report, "chromatic");
    assert_eq!(report["verdict"], "error");
}

#[test]
fn chromatic_without_source_is_a_usage_error() {
    let out = run(&["chromatic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_vectors_report_the_line() {
    let path = write_temp("bad.txt", "1 0 0\n1 0\n");
    let out = run(&["locally-octahedral", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "error");
    let message = report["statistics"]["message"].as_str().unwrap();
    assert!(message.contains("line 2"), "got: {message}");
}

#[test]
fn ks_color_emits_assignment() {
    let out = run(&["ks-color", "--builtin", "decorte13"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "ks-color");
    let bits = report["witnesses"]["assignment"].as_array().unwrap();
    assert_eq!(bits.len(), 13);
    assert_verdict_matches_exit(&out);
}

#[test]
fn graph_dot_and_json_exports() {
    let out = run(&["graph", "--builtin", "decorte13", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph orthogonality {"));
    assert_eq!(dot.matches(" -- ").count(), 24);

    let out = run(&["graph", "--builtin", "decorte13", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vertex_count"], 13);
    assert_eq!(doc["edge_count"], 24);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 24);
}

#[test]
fn gen_rational_text_round_trips_into_other_commands() {
    let out = run(&["gen-rational", "--height", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .collect();
    assert_eq!(lines.len(), 54);

    let path = write_temp("points.txt", &text);
    let out = run(&["octa-classify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "octa-classify");
    assert_eq!(report["witnesses"]["classes"].as_array().unwrap().len(), 54);
}

#[test]
fn gen_rational_json_reports_quadruples() {
    let out = run(&["gen-rational", "--height", "2", "--format", "json"]);
    let report = stdout_json(&out);
    assert_schema(&report, "gen-rational");
    assert_eq!(report["statistics"]["count"], 6);
}

#[test]
fn gz_and_baek_verify_hold() {
    let out = run(&["gz-verify", "--height", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "gz-verify");
    assert_eq!(report["witnesses"]["violations"].as_array().unwrap().len(), 0);

    let out = run(&["baek-verify", "--height", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "baek-verify");
    assert_eq!(
        report["witnesses"]["covering_violations"].as_array().unwrap().len(),
        0
    );
}

#[test]
fn baek_verify_accepts_a_rotated_basis() {
    let basis = "1/3 2/3 2/3 2/3 1/3 -2/3 2/3 -2/3 1/3";
    let out = run(&["baek-verify", "--height", "5", "--basis", basis]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "ok");
}

#[test]
fn bad_basis_is_a_usage_error() {
    let out = run(&["baek-verify", "--height", "5", "--basis", "1 0 0 0 1 0 0 0 2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["baek-verify", "--height", "5", "--basis", "1 0 0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn locally_octahedral_refutation_has_exit_code_1() {
    let path = write_temp("neg.txt", "1 0 0\n3/5 4/5 0\n-3/5 4/5 0\n");
    let out = run(&["locally-octahedral", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_schema(&report, "locally-octahedral");
    assert_eq!(report["verdict"], "refuted");
    assert_eq!(report["witnesses"]["triple"], serde_json::json!([0, 1, 2]));
    assert_verdict_matches_exit(&out);

    let path = write_temp("ok.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let out = run(&["locally-octahedral", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn negative_triple_gz_finds_a_witness() {
    let out = run(&["negative-triple", "--height", "5", "--coloring", "gz"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "negative-triple");
    assert_eq!(report["statistics"]["found"], true);
    assert_eq!(report["witnesses"]["points"].as_array().unwrap().len(), 3);
}

#[test]
fn negative_triple_octa_finds_nothing() {
    let out = run(&["negative-triple", "--height", "5", "--coloring", "octa"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["statistics"]["found"], false);
    assert!(report["witnesses"].is_null());
}

#[test]
fn dominate_reports_seed_and_witness() {
    let d = write_temp(
        "d.json",
        r#"{"primitives": [{"type": "cap", "center": [0,0,1], "radius": 0.1}]}"#,
    );
    let s = write_temp(
        "s.json",
        r#"{"primitives": [{"type": "cap", "center": [1,0,0], "radius": 0.1}]}"#,
    );
    let out = run(&[
        "dominate",
        "--d-region",
        d.to_str().unwrap(),
        "--s-region",
        s.to_str().unwrap(),
        "--samples",
        "1000",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_schema(&report, "dominate");
    assert_eq!(report["verdict"], "refuted");
    assert_eq!(report["seed"], 5);
    assert_eq!(
        report["witnesses"]["circle_normal"].as_array().unwrap().len(),
        3
    );
    assert_verdict_matches_exit(&out);
}

#[test]
fn dominate_bad_region_file_is_an_error() {
    let d = write_temp("d.json", r#"{"primitives": []}"#);
    let s = write_temp(
        "s.json",
        r#"{"primitives": [{"type": "cap", "center": [1,0,0], "radius": 0.1}]}"#,
    );
    let out = run(&[
        "dominate",
        "--d-region",
        d.to_str().unwrap(),
        "--s-region",
        s.to_str().unwrap(),
        "--samples",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn circle2_confirms_and_errors() {
    let pi = std::f64::consts::PI;
    let canonical = format!(
        r#"{{"b1": [[{h}, {p}], [{tq}, {t}]], "b2": [[0.0, {h}], [{p}, {tq}]]}}"#,
        h = pi / 2.0,
        p = pi,
        tq = 1.5 * pi,
        t = 2.0 * pi
    );
    let path = write_temp("arcs.json", &canonical);
    let out = run(&["circle2", "--arcs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "circle2");
    assert_eq!(report["statistics"]["confirmed"], true);

    let gap = r#"{"b1": [[0.0, 1.0]], "b2": [[2.0, 3.0]]}"#;
    let path = write_temp("gap.json", gap);
    let out = run(&["circle2", "--arcs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = stdout_json(&out);
    assert_eq!(report["verdict"], "error");
}

#[test]
fn unknown_builtin_is_a_usage_error() {
    let out = run(&["chromatic", "--builtin", "peres33"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let d = write_temp(
        "d.json",
        r#"{"primitives": [{"type": "cap", "center": [0,0,1], "radius": 0.1}]}"#,
    );
    let s = write_temp(
        "s.json",
        r#"{"primitives": [{"type": "cap", "center": [1,0,0], "radius": 0.1}]}"#,
    );
    let args = [
        "dominate",
        "--d-region",
        d.to_str().unwrap(),
        "--s-region",
        s.to_str().unwrap(),
        "--samples",
        "200",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["chromatic", "--builtin", "decorte13"]);
    let b = run(&["chromatic", "--builtin", "decorte13"]);
    assert_eq!(a.stdout, b.stdout);
}
