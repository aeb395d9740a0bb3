use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn zcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zcx")).args(args).env_remove("ZCX_THREADS").output().expect("spawn zcx")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = zcx(args);
    assert!(out.status.success(), "zcx {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(schema_name: &str, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).expect("output is JSON");
    let validator = schema(schema_name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
    v
}

#[test]
fn census_csv_to_eight() {
    let text = stdout_ok(&["census", "--max-size", "8", "--format", "csv"]);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&header[..3], ["size", "total", "l_convex"]);
    let c22 = header.iter().position(|h| *h == "c22").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    let sizes: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(sizes, ["2", "3", "4", "5", "6", "7", "8"]);
    let col: Vec<&str> = rows.iter().map(|r| r[c22]).collect();
    assert_eq!(col, ["0", "0", "0", "0", "0", "0", "2"]);
    assert!(rows.iter().all(|r| r.len() == header.len()));
    assert!(header.iter().any(|h| *h == "deg_2_2"));
}

#[test]
fn census_json_matches_schema() {
    let text = stdout_ok(&["census", "--max-size", "7", "--format", "json"]);
    let v = assert_valid("census.schema.json", &text);
    let last = &v["rows"][5];
    assert_eq!(last["size"], 7);
    assert_eq!(last["total"], "528");
    let l_convex: u64 = last["by_degree_pair"]
        .as_object()
        .unwrap()
        .iter()
        .filter(|(k, _)| k.split('_').all(|d| d.parse::<u32>().unwrap() <= 1))
        .map(|(_, c)| c.as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(l_convex.to_string(), last["l_convex"]);
    assert_eq!(last["l_convex"], "280");
}

#[test]
fn series_a_ends_with_28498() {
    let text = stdout_ok(&["series", "--name", "A", "--terms", "11"]);
    let v = assert_valid("series.schema.json", &text);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 11);
    assert_eq!(coeffs.last().unwrap(), "28498/1");
    let csv = stdout_ok(&["series", "--name", "A", "--terms", "11", "--format", "csv"]);
    assert_eq!(csv.lines().last(), Some("10,28498/1"));
}

#[test]
fn refined_series_carries_params() {
    let text = stdout_ok(&["series", "--name", "Np", "--z", "2/3", "--terms", "8"]);
    let v = assert_valid("series.schema.json", &text);
    assert_eq!(v["params"]["z"], "2/3");
    assert_eq!(v["name"], "Np");
}

#[test]
fn render_two_rows() {
    let text = stdout_ok(&["render", "--encoding", "1-2;0-1"]);
    assert_eq!(text, "##.\n.##\n");
}

#[test]
fn enumerate_outputs_agree() {
    let count = stdout_ok(&["enumerate", "--size", "6", "--count"]);
    assert_eq!(count.trim(), "120");
    let lines = stdout_ok(&["enumerate", "--size", "6"]);
    assert_eq!(lines.lines().count(), 120);
    let json = stdout_ok(&["enumerate", "--size", "6", "--format", "json"]);
    let v = assert_valid("enumerate.schema.json", &json);
    let listed: Vec<&str> = v["polyominoes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(listed, lines.lines().collect::<Vec<_>>());
    assert_eq!(v["count"], "120");
    let counted = stdout_ok(&["enumerate", "--size", "6", "--count", "--format", "json"]);
    assert_valid("enumerate.schema.json", &counted);
}

#[test]
fn gentree_modes_agree() {
    let labels = stdout_ok(&["gentree", "--max-size", "9"]);
    let construct = stdout_ok(&["gentree", "--max-size", "9", "--mode", "construct"]);
    assert_eq!(labels, construct);
    let totals: Vec<&str> = labels.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(totals, ["1", "2", "7", "26", "101", "404", "1649", "6824"]);
    let dump = stdout_ok(&["gentree", "--max-size", "8", "--dump-level", "8"]);
    let dump_c = stdout_ok(&["gentree", "--max-size", "8", "--dump-level", "8", "--mode", "construct"]);
    assert_eq!(dump, dump_c);
    let sum: u64 = dump.lines().map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(sum, 1649);
}

#[test]
fn verify_json_matches_schema() {
    let text = stdout_ok(&["verify", "--suite", "kernels", "--format", "json", "--timing"]);
    let v = assert_valid("verify.schema.json", &text);
    assert_eq!(v["passed"], true);
    assert!(v["suites"][0]["elapsed_seconds"].is_number());
}

#[test]
fn verify_text_is_deterministic_without_timing() {
    let a = stdout_ok(&["verify", "--suite", "structure", "--max-size", "8"]);
    let b = stdout_ok(&["verify", "--suite", "structure", "--max-size", "8"]);
    assert_eq!(a, b);
    assert!(a.trim_end().ends_with("ALL PASSED"));
}

#[test]
fn failing_fixture_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.json");
    std::fs::write(&path, r#"[{"id": "bad", "gf": "A", "offset": 2, "terms": [1, 2, 8]}]"#).unwrap();
    let out = zcx(&["verify", "--suite", "kernels", "--fixtures", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = assert_valid("verify.schema.json", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(v["passed"], false);

    std::fs::write(&path, r#"[{"id": "good", "gf": "A", "offset": 2, "terms": [1, 2, "7", 26]}]"#).unwrap();
    let out = zcx(&["verify", "--suite", "kernels", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["render", "--encoding", "3-1"][..],
        &["series", "--name", "Nope"],
        &["series", "--name", "C0p", "--terms", "5"],
        &["series", "--name", "Np", "--z", "abc"],
        &["gentree", "--max-size", "13", "--mode", "construct"],
        &["gentree", "--max-size", "5", "--dump-level", "6"],
        &["enumerate", "--size", "1"],
        &["verify", "--max-size", "13"],
        &["census"],
        &["frobnicate"],
    ] {
        let out = zcx(args);
        assert_eq!(out.status.code(), Some(2), "zcx {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let stdout = stdout_ok(&["census", "--max-size", "6", "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout_ok(&["census", "--max-size", "6"]));
}

#[test]
fn output_independent_of_thread_count() {
    let runs = [
        &["census", "--max-size", "9", "--format", "json"][..],
        &["gentree", "--max-size", "10", "--dump-level", "10"],
        &["enumerate", "--size", "7"],
    ];
    for args in runs {
        let base = stdout_ok(args);
        for k in ["1", "3"] {
            let mut with = vec!["--threads", k];
            with.extend_from_slice(args);
            assert_eq!(stdout_ok(&with), base, "--threads {k} {args:?}");
        }
        let out = Command::new(env!("CARGO_BIN_EXE_zcx")).args(args).env("ZCX_THREADS", "2").output().unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), base);
    }
}
