//! End-to-end tests of the `prmc` binary: documented example invocations,
//! output schemas, the exit-code contract, and worker-count determinism.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn prmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prmc"))
        .args(args)
        .env_remove("PRMC_BUDGET")
        .output()
        .expect("spawn prmc")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn bounds_example_values() {
    let v = json_of(&prmc(&["bounds", "--q", "5", "--d", "3", "--m", "2"]));
    assert_eq!(v["serre"], 16);
    assert_eq!(v["second"], 15);
    assert_eq!(v["third"], 12);
    assert_eq!(v["ambient"], 31);
    // the per-bound detail map rides along
    assert_eq!(v["details"]["serre"]["value"], 16);
}

#[test]
fn census_example_top_counts() {
    let v = json_of(&prmc(&[
        "census", "--q", "3", "--d", "3", "--m", "2", "--mode", "exhaustive", "--top", "3",
    ]));
    let top = v["top"].as_array().expect("top array");
    let counts: Vec<u64> = top.iter().map(|e| e["count"].as_u64().unwrap()).collect();
    let tallies: Vec<u64> = top.iter().map(|e| e["tally"].as_u64().unwrap()).collect();
    assert_eq!(counts, [10, 9, 8]);
    assert_eq!(tallies, [52, 234, 702]);
    for check in v["checks"].as_array().expect("checks array") {
        assert_eq!(check["ok"], true, "bound {} violated", check["bound"]);
    }
}

#[test]
fn extremal_hermitian_example() {
    let v = json_of(&prmc(&["extremal", "--q", "4", "--config", "hermitian"]));
    assert_eq!(v["config_tag"], "hermitian");
    assert_eq!(v["predicted_count"], 9);
    assert_eq!(v["measured_count"], 9);
    assert_eq!(v["form"]["degree"], 3);
}

#[test]
fn field_json_shape() {
    let v = json_of(&prmc(&["field", "--q", "9"]));
    assert_eq!(v["q"], 9);
    assert_eq!(v["p"], 3);
    assert_eq!(v["e"], 2);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1]));
    // --p/--e names the same field
    let w = json_of(&prmc(&["field", "--p", "3", "--e", "2"]));
    assert_eq!(v, w);
}

#[test]
fn code_metadata() {
    let v = json_of(&prmc(&["code", "--q", "3", "--d", "2", "--m", "2", "--kind", "prm"]));
    assert_eq!(v["kind"], "prm");
    assert_eq!(v["n"], 13);
    assert_eq!(v["k"], 6);
}

#[test]
fn spectrum_csv_has_min_weight_first() {
    let out = prmc(&[
        "spectrum", "--q", "3", "--d", "2", "--m", "2", "--kind", "grm", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,count"));
    // GRM(q=3, d=2, m=2): minimum weight (q-d)q = 3
    assert_eq!(lines.next(), Some("3,12"));
}

#[test]
fn classify_reads_file_and_stdin() {
    let v = json_of(&prmc(&["extremal", "--q", "5", "--config", "line-plus-conic"]));
    let form = serde_json::to_string(&v["form"]).unwrap();

    let path = std::env::temp_dir().join(format!("prmc-classify-{}.json", std::process::id()));
    std::fs::write(&path, &form).unwrap();
    let c = json_of(&prmc(&["classify", "--input", path.to_str().unwrap()]));
    std::fs::remove_file(&path).ok();
    assert_eq!(c["points"], 12);
    assert_eq!(c["s"], 1);
    assert_eq!(c["tags"], serde_json::json!(["contains-hyperplane"]));

    let mut child = Command::new(env!("CARGO_BIN_EXE_prmc"))
        .args(["classify", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn prmc");
    child.stdin.take().unwrap().write_all(form.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let via_stdin = json_of(&out);
    assert_eq!(via_stdin, c);
}

#[test]
fn sampled_census_json_is_worker_independent() {
    let base = [
        "census", "--q", "5", "--d", "3", "--m", "2", "--mode", "sampled", "--samples", "2000",
    ];
    let one = prmc(&[&base[..], &["--workers", "1"]].concat());
    let four = prmc(&[&base[..], &["--workers", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_code_contract() {
    // 2: domain violation
    let out = prmc(&["field", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime power"));

    // 3: budget exceeded
    let out = prmc(&["census", "--q", "3", "--d", "3", "--m", "2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));

    // 64: missing required argument
    let out = prmc(&["bounds", "--q", "5", "--d", "3"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(!out.stderr.is_empty());

    // 64: --q together with --p
    let out = prmc(&["field", "--q", "9", "--p", "3", "--e", "2"]);
    assert_eq!(out.status.code(), Some(64));

    // 64: csv for a non-histogram payload
    let out = prmc(&["bounds", "--q", "5", "--d", "3", "--m", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(64));

    // 64: no field selection at all
    let out = prmc(&["bounds", "--d", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn budget_env_and_flag_precedence() {
    let out = Command::new(env!("CARGO_BIN_EXE_prmc"))
        .args(["census", "--q", "3", "--d", "3", "--m", "2"])
        .env("PRMC_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "env budget applies");

    let out = Command::new(env!("CARGO_BIN_EXE_prmc"))
        .args(["census", "--q", "3", "--d", "3", "--m", "2", "--budget", "100000"])
        .env("PRMC_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "--budget overrides env");

    let out = Command::new(env!("CARGO_BIN_EXE_prmc"))
        .args(["census", "--q", "3", "--d", "3", "--m", "2"])
        .env("PRMC_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64), "malformed env is a usage error");
}

#[test]
fn verify_quick_passes() {
    let out = prmc(&["verify", "--level", "quick", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    for line in &lines {
        assert!(line.contains("PASS"), "unexpected line: {line}");
    }
}
