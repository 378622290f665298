//! End-to-end checks of the crtool binary: exit codes, determinism, and
//! spec round-trips.

use std::process::Command;

fn crtool() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crtool"))
}

fn write_spec(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("crtool-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn enumerate_is_deterministic_and_exits_zero() {
    let spec = write_spec("enum.json", r#"{"n": 5}"#);
    let run = || {
        let out = crtool()
            .args(["enumerate", "--spec"])
            .arg(&spec)
            .output()
            .unwrap();
        (out.status.code(), out.stdout)
    };
    let (code1, out1) = run();
    let (code2, out2) = run();
    assert_eq!(code1, Some(0));
    assert_eq!(out1, out2, "byte-level reproducibility");
    let v: serde_json::Value = serde_json::from_slice(&out1).unwrap();
    assert_eq!(v["count"], serde_json::json!(3));
}

#[test]
fn check2nd_pass_and_fail_exit_codes() {
    let good = write_spec(
        "good.json",
        r#"{"model": {"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "Zero", "order": 4}}]}}"#,
    );
    let out = crtool()
        .args(["check2nd", "--spec"])
        .arg(&good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // the all-ones structure is rejected: verdict fail, exit 1
    let bad = write_spec(
        "allones.json",
        r#"{"model": {"n": 3, "blocks": [
            {"size": 1, "sign": 1, "jet": {"family": "Zero", "order": 4}},
            {"size": 1, "sign": -1, "jet": {"family": "Zero", "order": 4}}
        ]}}"#,
    );
    let out = crtool()
        .args(["check2nd", "--spec"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_errors_exit_two() {
    let bad = write_spec(
        "badsum.json",
        r#"{"model": {"n": 4, "blocks": [{"size": 2, "sign": 1}, {"size": 2, "sign": 1}]}}"#,
    );
    let out = crtool()
        .args(["levi", "--spec"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let noncanonical = write_spec(
        "noncanon.json",
        r#"{"f": {"order": 8, "coeffs": ["0","0","2/4","0","0","0","0","0","0"], "exact": true}}"#,
    );
    let out = crtool()
        .args(["homogeneous", "--spec"])
        .arg(&noncanonical)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = crtool()
        .args(["frobnicate", "--spec"])
        .arg(&noncanonical)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homogeneous_type_v_reports_three_halves() {
    let spec = write_spec("typev.json", r#"{"f": {"family": "TypeV", "order": 12}}"#);
    let out = crtool()
        .args(["homogeneous", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["homogeneous"], serde_json::json!(true));
    assert_eq!(v["c"], serde_json::json!("3/2"));
}

#[test]
fn equivalent_verdicts() {
    let yes = write_spec(
        "equiv-yes.json",
        r#"{"f": {"family": "TypeII", "order": 10}, "fstar": {"family": "TypeII", "order": 10}}"#,
    );
    let out = crtool()
        .args(["equivalent", "--spec"])
        .arg(&yes)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let no = write_spec(
        "equiv-no.json",
        r#"{"f": {"family": "TypeII", "order": 10}, "fstar": {"family": "TypeIII", "order": 10}}"#,
    );
    let out = crtool()
        .args(["equivalent", "--spec"])
        .arg(&no)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // at points: x^4 near 1 vs (x-1)^4 near 2
    let pts = write_spec(
        "equiv-pts.json",
        r#"{"f": {"order": 8, "coeffs": ["0","0","0","0","1","0","0","0","0"], "exact": true},
            "fstar": {"order": 8, "coeffs": ["1","-4","6","-4","1","0","0","0","0"], "exact": true},
            "x1": "1", "x1star": "2"}"#,
    );
    let out = crtool()
        .args(["equivalent", "--spec"])
        .arg(&pts)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn symbol_respects_seed_and_out_file() {
    let spec = write_spec(
        "sym.json",
        r#"{"model": {"n": 5, "blocks": [
            {"size": 2, "sign": 1, "jet": {"family": "Zero", "order": 4}},
            {"size": 2, "sign": -1, "jet": {"family": "Zero", "order": 4}}
        ]}}"#,
    );
    let outfile = std::env::temp_dir().join("crtool-cli-tests/symbol-out.json");
    let status = crtool()
        .args(["symbol", "--seed", "7", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&outfile)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&outfile).unwrap()).unwrap();
    assert_eq!(v["jordan_type"], serde_json::json!([2, 2]));
    assert_eq!(v["seed"], serde_json::json!(7));
}

#[test]
fn text_and_latex_formats() {
    let spec = write_spec("fmt.json", r#"{"n": 6}"#);
    for (fmt, needle) in [("text", "count:"), ("latex", "\\begin{description}")] {
        let out = crtool()
            .args(["enumerate", "--format", fmt, "--spec"])
            .arg(&spec)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{fmt}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(needle), "{fmt}: {text}");
    }
}

#[test]
fn symmetries_on_type_ii_model() {
    let spec = write_spec(
        "symm.json",
        r#"{"model": {"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "TypeII", "order": 16}}]}}"#,
    );
    let out = crtool()
        .args(["symmetries", "--degree", "12", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], serde_json::json!(12));
    let fields = v["fields"].as_array().unwrap();
    assert_eq!(fields.len(), 12);
    assert!(fields
        .iter()
        .all(|f| f["tangency"]["verdict"] != serde_json::json!("fails")));
}
