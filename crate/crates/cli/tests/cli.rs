//! End-to-end checks of the batch interface: exit codes, determinism, and
//! the shipped scenario files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fsets")
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn intersect_scenario_file() {
    let path = scenario_path("torus_line.json");
    let out = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "intersect");
    assert_eq!(report["witnesses"], serde_json::json!([[1], [5], [25]]));
}

#[test]
fn full_group_scan_counts_box() {
    // No equations: every coefficient vector in the box qualifies.
    let path = scenario_path("full_torus.json");
    let out = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["witness_count"], 9);
}

#[test]
fn certify_scenario_file_passes() {
    let path = scenario_path("supersingular_line.json");
    let out = run(&["certify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "PASS");
    assert_eq!(
        report["witnesses"],
        serde_json::json!([[1], [5], [25], [125]])
    );
}

#[test]
fn charpoly_reports_curve_relations() {
    let path = scenario_path("supersingular_line.json");
    let out = run(&["charpoly", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["curves"][0]["char_poly"],
        serde_json::json!([5, 0, 1])
    );
}

#[test]
fn reports_are_byte_identical() {
    let path = scenario_path("torus_line.json");
    let first = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    let second = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    let text1 = run(&["intersect", path.to_str().unwrap()]);
    let text2 = run(&["intersect", path.to_str().unwrap()]);
    assert_eq!(text1.stdout, text2.stdout);
}

#[test]
fn threads_flag_preserves_output() {
    let path = scenario_path("torus_line.json");
    let seq = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    let par = run(&[
        "intersect",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--threads",
        "4",
    ]);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn parse_error_exit_code() {
    let dir = std::env::temp_dir().join("fsets-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["intersect", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    // Missing file also counts as unreadable input.
    let missing = dir.join("missing.json");
    let out = run(&["intersect", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn validation_error_exit_code() {
    let dir = std::env::temp_dir().join("fsets-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let invalid = dir.join("invalid.json");
    // Off-curve point: parses, fails validation.
    std::fs::write(
        &invalid,
        r#"{
            "schema_version": 1,
            "name": "bad",
            "p": 5,
            "q": 5,
            "tower_modulus": "t^3 + 1",
            "torus_rank": 0,
            "curves": [{"a4": 0, "a6": 1}],
            "points": {"P": {"elliptic": [["t", "t"]]}},
            "gamma": ["P"],
            "bounds": {"bound": 3, "cap": 2}
        }"#,
    )
    .unwrap();
    let out = run(&["intersect", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn resource_error_exit_code() {
    // A bound whose enumeration box exceeds the budget.
    let path = scenario_path("torus_line.json");
    let out = run(&["intersect", path.to_str().unwrap(), "--bound", "6000000000"]);
    assert_eq!(out.status.code(), Some(69));
}

#[test]
fn recurrence_standalone() {
    let out = run(&[
        "recurrence",
        "--relation",
        "[5, -2, 1]",
        "--cap",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["vectors"],
        serde_json::json!([["1", "0"], ["0", "1"], ["-5", "2"], ["-10", "-1"]])
    );
    // Non-monic relation is a validation error.
    let out = run(&["recurrence", "--relation", "[5, -2, 3]"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn pseudo_certificate_from_file_passes() {
    // Coset of a sub-block subgroup, described as a pseudo-generalized set
    // (offset plus the preimage of the identity under a projection).
    let path = scenario_path("coset_translate.json");
    let out = run(&["certify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "PASS");
    // Witnesses: (1 mod 4, b) via the torsion first generator.
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 5);
}

#[test]
fn elliptic_constraint_from_file() {
    // X pinned to the base point's x-coordinate: only +-1 times the
    // generator lies on it, and the identity is excluded by the flag.
    let path = scenario_path("pinned_elliptic.json");
    let out = run(&["intersect", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["witnesses"], serde_json::json!([[-1], [1]]));
}

#[test]
fn recurrence_verified_against_scenario() {
    let path = scenario_path("supersingular_line.json");
    let out = run(&[
        "recurrence",
        path.to_str().unwrap(),
        "--relation",
        "[5, 0, 1]",
        "--cap",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verified"]["ok"], true);
    assert_eq!(report["verified"]["generic_proof"], true);
    // The ordinary relation on the supersingular curve is rejected.
    let out = run(&[
        "recurrence",
        path.to_str().unwrap(),
        "--relation",
        "[5, -2, 1]",
    ]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn certify_pass_bounded_exit_code() {
    // Tower-dependent coordinates rule out the exact valuation decision, so
    // membership falls back to bounded search; a claimed point beyond the
    // bound leaves an uncertified absence and downgrades PASS.
    let path = scenario_path("tower_units.json");
    let out = run(&["certify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "PASS-BOUNDED");
    assert!(!report["bounded_gaps"].as_array().unwrap().is_empty());
    assert!(report["completeness_failures"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn certify_fail_exit_code() {
    // A certificate that claims the wrong orbit: completeness must fail.
    let dir = std::env::temp_dir().join("fsets-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong_cert.json");
    let text = std::fs::read_to_string(scenario_path("supersingular_line.json")).unwrap();
    // Claim only the even orbit: the odd witnesses 5 and 125 go uncovered.
    let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
    let sets = file["certificate"]["generalized"].as_array().unwrap();
    file["certificate"]["generalized"] = serde_json::json!([sets[0]]);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = run(&["certify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "FAIL");
    let failures = report["completeness_failures"].as_array().unwrap();
    assert!(!failures.is_empty());
}
