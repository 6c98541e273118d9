//! End-to-end tests of the binary: document round-trips, verb behavior,
//! exit codes, and report shapes.

use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_affinet"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn fixture_str(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

/// Run the binary, returning (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn run_stdin(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write stdin");
    let out = child.wait_with_output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn payload(stdout: &str) -> Value {
    let doc: Value = serde_json::from_str(stdout).expect("stdout is JSON");
    assert_eq!(doc["version"], "1");
    doc["payload"].clone()
}

#[test]
fn the_sierpinski_system_fixture_is_t0_and_sober() {
    let f = fixture_str("sierpinski-frame-2.json");
    let (code, out, _) = run(&["check", "t0", &f]);
    assert_eq!(code, 0, "t0 should hold: {out}");
    assert_eq!(payload(&out)["holds"], true);
    let (code, out, _) = run(&["check", "sober", &f]);
    assert_eq!(code, 0, "sobriety should hold: {out}");
    let p = payload(&out);
    assert_eq!(p["holds"], true);
    assert_eq!(p["points_of_algebra"], 2);
}

#[test]
fn a_three_chain_has_two_points_into_the_two_chain() {
    let (code, out, _) = run(&[
        "points",
        "--algebra",
        &fixture_str("three-chain.json"),
        "--into",
        &fixture_str("two.json"),
    ]);
    assert_eq!(code, 0);
    let p = payload(&out);
    assert_eq!(p["count"], 2);
    assert_eq!(p["homs"].as_array().unwrap().len(), 2);
}

#[test]
fn the_quantale_comparison_suite_refutes_with_the_expected_witness() {
    let (code, out, _) = run(&[
        "verify",
        "cor2",
        "--variety",
        "uquant",
        "--L",
        &fixture_str("lukasiewicz3.json"),
    ]);
    assert_eq!(code, 1, "a refuted statement exits 1: {out}");
    let p = payload(&out);
    assert_eq!(p["theorem_holds"], false);
    assert_eq!(p["negative_control_flagged"], true);
    assert_eq!(p["failures"].as_array().unwrap().len(), 0);
    assert_eq!(p["witness"], "{\"A1\":[0,1],\"A2\":[0]}");
}

#[test]
fn canonical_documents_round_trip_byte_identically() {
    for name in [
        "two.json",
        "three-chain.json",
        "lukasiewicz3.json",
        "boolean4.json",
        "two-set.json",
        "two-supsl.json",
        "sierpinski-frame-2.json",
    ] {
        let original = std::fs::read_to_string(fixture(name)).unwrap();
        let (code, out, err) = run(&["validate", "--echo", &fixture_str(name)]);
        assert_eq!(code, 0, "{name}: {err}");
        assert_eq!(out, original, "{name} is not canonical");
    }
}

#[test]
fn echo_canonicalizes_scrambled_documents_idempotently() {
    // Keys out of order, the order given with redundant transitive and
    // reflexive pairs, and a duplicated open.
    let draft = r#"{"payload":{"opens":[
        {"q":"bot","p":"bot"},
        {"p":"top","q":"top"},
        {"p":"top","q":"top"},
        {"p":"bot","q":"top"}],
      "points":["p","q"],
      "base":{"le":[["bot","top"],["bot","bot"],["bot","top"]],
              "variety":"frame","elements":["bot","top"]}},
      "version":"1","kind":"space"}"#;
    let (code, once, err) = run_stdin(&["validate", "--echo", "-"], draft);
    assert_eq!(code, 0, "{err}");
    let (code, twice, _) = run_stdin(&["validate", "--echo", "-"], &once);
    assert_eq!(code, 0);
    assert_eq!(once, twice, "canonicalization must be idempotent");
    assert_ne!(once, draft);
    // The duplicated open collapsed.
    let p = payload(&once);
    assert_eq!(p["opens"].as_array().unwrap().len(), 3);
}

#[test]
fn an_order_cycle_is_rejected_as_not_a_partial_order() {
    let draft = r#"{"kind":"algebra","version":"1","payload":{
        "variety":"frame","elements":["a","b"],
        "le":[["a","b"],["b","a"]]}}"#;
    let (code, _, err) = run_stdin(&["validate", "-"], draft);
    assert_eq!(code, 2);
    assert!(err.contains("NotAPartialOrder"), "stderr: {err}");
}

#[test]
fn schema_violations_and_unknown_names_are_input_errors() {
    let (code, _, err) = run_stdin(&["validate", "-"], "{not json");
    assert_eq!(code, 2);
    assert!(err.contains("ParseError"), "stderr: {err}");

    let (code, _, err) = run_stdin(
        &["validate", "-"],
        r#"{"kind":"algebra","version":"2","payload":{}}"#,
    );
    assert_eq!(code, 2);
    assert!(err.contains("SchemaError"), "stderr: {err}");

    let (code, _, err) = run_stdin(
        &["validate", "-"],
        r#"{"kind":"algebra","version":"1","payload":{
            "variety":"frame","elements":["bot","top"],
            "le":[["bot","zenith"]]}}"#,
    );
    assert_eq!(code, 2);
    assert!(err.contains("zenith"), "stderr: {err}");

    let (code, _, _) = run(&["check", "t0", &fixture_str("two.json")]);
    assert_eq!(code, 2, "check rejects algebra documents");

    let (code, _, _) = run(&["verify", "nonesuch", "--variety", "frame"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "thm1", "--variety", "klein"]);
    assert_eq!(code, 2);
}

#[test]
fn the_quantale_base_has_no_finite_sierpinski_system() {
    let (code, _, err) = run(&[
        "sierpinski",
        "--system",
        "--L",
        &fixture_str("lukasiewicz3.json"),
    ]);
    assert_eq!(code, 2, "stderr: {err}");
}

#[test]
fn frame_coproducts_match_the_downset_counts() {
    let three = fixture_str("three-chain.json");
    let (code, out, _) = run(&["coproduct", &three, &three]);
    assert_eq!(code, 0);
    assert_eq!(payload(&out)["elements"], 6);
    let (code, out, _) = run(&["coproduct", &three, &three, &three]);
    assert_eq!(code, 0);
    assert_eq!(payload(&out)["elements"], 20);
}

#[test]
fn an_oversized_coproduct_exits_with_the_budget_code() {
    // Four boolean diamonds multiply out to sixteen atoms, and the
    // sixty-five thousand element result overflows the default budget.
    let b = fixture_str("boolean4.json");
    let (code, _, err) = run(&["coproduct", &b, &b, &b, &b]);
    assert_eq!(code, 3, "stderr: {err}");
    assert!(err.contains("budget"), "stderr: {err}");
}

#[test]
fn embedding_then_spatializing_returns_the_same_space_document() {
    let (code, space_doc, _) = run(&[
        "sierpinski",
        "--space",
        "--L",
        &fixture_str("three-chain.json"),
    ]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let space_path = dir.path().join("space.json");
    std::fs::write(&space_path, &space_doc).unwrap();
    let (code, system_doc, _) = run(&["embed", &space_path.to_string_lossy()]);
    assert_eq!(code, 0);
    let system_path = dir.path().join("system.json");
    std::fs::write(&system_path, &system_doc).unwrap();
    let (code, roundtrip, _) = run(&["spatialize", &system_path.to_string_lossy()]);
    assert_eq!(code, 0);
    assert_eq!(roundtrip, space_doc);
}

#[test]
fn products_require_a_common_base() {
    let (code, s1, _) = run(&["sierpinski", "--system", "--L", &fixture_str("two.json")]);
    assert_eq!(code, 0);
    let (code, s2, _) = run(&[
        "sierpinski",
        "--system",
        "--L",
        &fixture_str("three-chain.json"),
    ]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("s1.json");
    let p2 = dir.path().join("s2.json");
    std::fs::write(&p1, s1).unwrap();
    std::fs::write(&p2, s2).unwrap();
    let (code, _, err) = run(&[
        "product",
        &p1.to_string_lossy(),
        &p2.to_string_lossy(),
    ]);
    assert_eq!(code, 2, "stderr: {err}");
}

#[test]
fn a_system_with_indistinguishable_points_fails_t0_with_a_collision() {
    let draft = r#"{"kind":"system","version":"1","payload":{
        "base":{"variety":"frame","elements":["bot","top"],"le":[["bot","top"]]},
        "points":["p","q"],
        "algebra":{"variety":"frame","elements":["bot","top"],"le":[["bot","top"]]},
        "kappa":{"bot":{"p":"bot","q":"bot"},"top":{"p":"top","q":"top"}}}}"#;
    let (code, out, _) = run_stdin(&["check", "t0", "-"], draft);
    assert_eq!(code, 1);
    let p = payload(&out);
    assert_eq!(p["holds"], false);
    assert_eq!(p["collision"][0], "p");
    assert_eq!(p["collision"][1], "q");
}

#[test]
fn a_morphism_document_validates_and_round_trips() {
    let sierpinski = std::fs::read_to_string(fixture("sierpinski-frame-2.json")).unwrap();
    let system: Value = serde_json::from_str(&sierpinski).unwrap();
    let mut m = serde_json::Map::new();
    m.insert("source".into(), system["payload"].clone());
    m.insert("target".into(), system["payload"].clone());
    m.insert(
        "points".into(),
        serde_json::json!({"bot": "bot", "top": "top"}),
    );
    m.insert(
        "algebra_map".into(),
        serde_json::json!({"bot": "bot", "c": "c", "top": "top"}),
    );
    let doc = serde_json::json!({
        "kind": "morphism",
        "version": "1",
        "payload": Value::Object(m.clone()),
    })
    .to_string();
    let (code, once, err) = run_stdin(&["validate", "--echo", "-"], &doc);
    assert_eq!(code, 0, "stderr: {err}");
    let (code, twice, _) = run_stdin(&["validate", "--echo", "-"], &once);
    assert_eq!(code, 0);
    assert_eq!(once, twice);

    // An algebra map that breaks the structure square is a validation
    // error.
    m.insert(
        "algebra_map".into(),
        serde_json::json!({"bot": "bot", "c": "bot", "top": "top"}),
    );
    let bad = serde_json::json!({
        "kind": "morphism",
        "version": "1",
        "payload": Value::Object(m),
    })
    .to_string();
    let (code, _, err) = run_stdin(&["validate", "-"], &bad);
    assert_eq!(code, 2);
    assert!(err.contains("ValidationError"), "stderr: {err}");
}

#[test]
fn reports_render_in_both_formats() {
    let args = [
        "points",
        "--algebra",
        &fixture_str("three-chain.json"),
        "--into",
        &fixture_str("two.json"),
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["kind"], "report");
    assert_eq!(doc["payload"]["op"], "points");

    let mut text_args = args.to_vec();
    text_args.extend_from_slice(&["--format", "text"]);
    let (code, out, _) = run(&text_args);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 points"), "text report: {out}");
}

#[test]
fn the_wall_clock_advisory_is_read_from_the_environment() {
    let out = bin()
        .args([
            "verify",
            "coprodUP",
            "--variety",
            "set",
            "--instances",
            "6",
        ])
        .env("VERIFY_BUDGET_MS", "0")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let notes = doc["payload"]["budget_notes"].as_array().unwrap();
    assert!(
        notes.iter().any(|n| n.as_str().unwrap().contains("advisory")),
        "expected a wall-clock advisory note, got {notes:?}"
    );
}

#[test]
fn a_passing_suite_exits_zero_with_a_full_report() {
    let (code, out, _) = run(&[
        "verify",
        "prop2",
        "--variety",
        "frame",
        "--seed",
        "7",
        "--instances",
        "10",
    ]);
    assert_eq!(code, 0, "{out}");
    let p = payload(&out);
    assert_eq!(p["passes"], 10);
    assert_eq!(p["negative_control_flagged"], true);
    assert_eq!(p["theorem_holds"], true);
}
