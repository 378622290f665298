//! Golden-file checks: the canonical JSON reports are pinned byte for byte.

use serde_json::json;

use crtool::cli::{render, run_command, RunOpts};

fn check(name: &str, command: &str, spec: serde_json::Value) {
    let (report, _) = run_command(command, &spec, &RunOpts::default()).unwrap();
    let rendered = render(&report, "json").unwrap();
    let path = format!("{}/tests/golden/{}.json", env!("CARGO_MANIFEST_DIR"), name);
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rendered, expected, "golden mismatch for {name}");
}

#[test]
fn enumerate_n5_golden() {
    check("enumerate_n5", "enumerate", json!({"n": 5}));
}

#[test]
fn symbol_2_2_golden() {
    check(
        "symbol_2_2",
        "symbol",
        json!({"model": {"n": 5, "blocks": [
            {"size": 2, "sign": 1, "jet": {"family": "Zero", "order": 4}},
            {"size": 2, "sign": -1, "jet": {"family": "Zero", "order": 4}}
        ]}}),
    );
}

#[test]
fn homogeneous_typev_golden() {
    check(
        "homogeneous_typev",
        "homogeneous",
        json!({"f": {"family": "TypeV", "order": 12}}),
    );
}

#[test]
fn kernel_n3_golden() {
    check(
        "kernel_n3",
        "kernel",
        json!({"model": {"n": 3, "blocks": [
            {"size": 2, "sign": 1, "jet": {"family": "Zero", "order": 4}}
        ]}}),
    );
}
