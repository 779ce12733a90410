use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_vclass");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("VCLASS_BUDGET")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn fixture_files_match_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["fixture", "ex3"]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(dir.path().join("ex3.json")).unwrap(),
        golden("ex3.json")
    );
}

#[test]
fn classify_matches_golden_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["fixture", "ex1"]);
    let o = run(dir.path(), &["classify", "ex1.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("classify_ex1.json"));
    let v = json(&o);
    assert_eq!(v["nowhere_dense"], true);
    assert_eq!(v["compactly_generated"], false);
    assert_eq!(v["bounded"], false);
    assert_eq!(v["schema_version"], 1);
    let o = run(dir.path(), &["classify", "ex1.json", "--format", "text"]);
    assert_eq!(stdout(&o), golden("classify_ex1.txt"));
}

#[test]
fn every_fixture_classifies_as_annotated() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ex0", "ex1", "ex2", "ex3", "hrs", "stable_constant"] {
        assert!(run(dir.path(), &["fixture", name]).status.success());
        let file = format!("{name}.json");
        let o = run(dir.path(), &["classify", &file]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(
            json(&o)["verdict_mismatches"],
            Value::Array(vec![]),
            "{name}"
        );
        assert_eq!(
            run(dir.path(), &["validate", &file]).status.code(),
            Some(0),
            "{name}"
        );
        // Byte-identical output across runs.
        assert_eq!(o.stdout, run(dir.path(), &["classify", &file]).stdout);
    }
}

#[test]
fn tampered_verdicts_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["fixture", "ex2"]);
    let text = std::fs::read_to_string(dir.path().join("ex2.json")).unwrap();
    write(
        dir.path(),
        "ex2.json",
        &text.replace(
            r#""compactly_generated": true"#,
            r#""compactly_generated": false"#,
        ),
    );
    let o = run(dir.path(), &["classify", "ex2.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict_mismatches"].as_array().unwrap().len(), 1);
}

#[test]
fn enumerate_counts_and_streams() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "two.json",
        r#"{"spectrum":{"kind":"two_point","m_idempotent":true}}"#,
    );
    let o = run(
        dir.path(),
        &[
            "enumerate",
            "--spectrum",
            "two.json",
            "--window",
            "0..0",
            "--count-only",
        ],
    );
    assert_eq!(stdout(&o), "5\n");
    let o = run(
        dir.path(),
        &["enumerate", "--spectrum", "two.json", "--window", "0..1"],
    );
    assert_eq!(stdout(&o).lines().count(), 14);
    let o = run(
        dir.path(),
        &[
            "enumerate",
            "--spectrum",
            "two.json",
            "--window",
            "-1..0",
            "--count-only",
        ],
    );
    assert_eq!(stdout(&o), "14\n");
}

#[test]
fn budget_is_enforced_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "two.json",
        r#"{"spectrum":{"kind":"two_point"}}"#,
    );
    let args = [
        "enumerate",
        "--spectrum",
        "two.json",
        "--window",
        "0..1",
        "--count-only",
    ];
    let o = Command::new(BIN)
        .args(args)
        .current_dir(dir.path())
        .env("VCLASS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(BIN)
        .args(args)
        .current_dir(dir.path())
        .env("VCLASS_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(BIN)
        .args(args)
        .current_dir(dir.path())
        .env("VCLASS_BUDGET", "14")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "14\n");
}

#[test]
fn locate_reports_the_gap() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "chain.json",
        r#"{"schema_version":1,
            "spectrum":{"kind":"finite_chain","primes":[{"name":"0"},{"name":"q"},{"name":"m"}]},
            "filtration":{"window":[0,0],"systems":{"0":[["0","0"],["m","m"]]}}}"#,
    );
    let o = run(
        dir.path(),
        &[
            "locate",
            "chain.json",
            "--degree",
            "0",
            "--ideal",
            "prime:q",
        ],
    );
    assert_eq!(json(&o)["in_gap"], serde_json::json!(["0", "m"]));
    let o = run(dir.path(), &["locate", "chain.json", "--ideal", "prime:m"]);
    assert_eq!(json(&o)["in_interval"], serde_json::json!(["m", "m"]));
    let o = run(dir.path(), &["locate", "chain.json", "--ideal", "prime:z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn schema_errors_exit_with_two_and_name_pointers() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "bad.json",
        r#"{"spectrum":{"kind":"two_point","colour":1}}"#,
    );
    let o = run(dir.path(), &["validate", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/spectrum/colour: unexpected field"));
    assert_eq!(
        run(dir.path(), &["validate", "missing.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn validation_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "x.json",
        r#"{"spectrum":{"kind":"two_point"},"system":[["0","m"],["m","m"]]}"#,
    );
    let o = run(dir.path(), &["validate", "x.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], false);
    write(
        dir.path(),
        "f.json",
        r#"{"spectrum":{"kind":"two_point"},"filtration":{"window":[0,1],"systems":{"0":[["0","m"]],"1":[["0","0"]]}}}"#,
    );
    let o = run(dir.path(), &["validate", "f.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("nestedness"));
}

#[test]
fn coaisle_chain_generators_and_tor() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ex0", "ex2", "ex3", "hrs"] {
        run(dir.path(), &["fixture", name]);
    }
    let o = run(dir.path(), &["chain", "ex2.json"]);
    assert_eq!(json(&o)["flat"], true);
    assert_eq!(
        run(dir.path(), &["chain", "ex0.json"]).status.code(),
        Some(1)
    );
    let o = run(dir.path(), &["generators", "hrs.json"]);
    assert_eq!(
        json(&o)["display"],
        serde_json::json!(["K(-inf,R)[n] : n ≤ -1"])
    );
    let o = run(
        dir.path(),
        &["xi", "ex3.json", "--degree", "0", "--module", "R/prime:m"],
    );
    assert_eq!(json(&o)["in_coaisle"], json(&o)["homological"]);
    let o = run(dir.path(), &["tor", "ex3.json", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["mismatches"], Value::Array(vec![]));
    let o = run(dir.path(), &["tor", "ex3.json", "--module", "R/prime:m"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["in_class"].is_boolean());
}

#[test]
fn diagrams_are_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["fixture", "ex0"]);
    assert!(run(dir.path(), &["diagram", "ex0.json", "--out", "a.svg"])
        .status
        .success());
    assert!(run(dir.path(), &["diagram", "ex0.json", "--out", "b.svg"])
        .status
        .success());
    let a = std::fs::read_to_string(dir.path().join("a.svg")).unwrap();
    assert_eq!(
        a,
        std::fs::read_to_string(dir.path().join("b.svg")).unwrap()
    );
    assert!(a.starts_with("<svg") && a.contains("url(#hatch)") && a.contains(r#"class="dense""#));
    assert_eq!(a.matches(r#"class="lane""#).count(), 6);
}

#[test]
fn unknown_fixture_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["fixture", "ex9"]).status.code(), Some(2));
}
