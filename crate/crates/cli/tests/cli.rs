use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn linset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linset")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn reference_suite() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../suites/reference.json")
}

fn write(dir: &tempfile::TempDir, name: &str, contents: &[u8]) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_jv_reports_size_17() {
    let out = linset(&["construct", "jv", "--q", "2", "--t", "5", "--ks", "3,2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["size"], 17);
    assert_eq!(doc["report"]["N"], json!([12, 4, 1, 0, 0]));
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["params"]["ks"], json!([3, 2]));
    assert_eq!(doc["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert!(doc["subspace"]["tower"]["defining_polynomials"].is_array());
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn construct_output_is_deterministic() {
    let args = ["construct", "random", "--q", "3", "--n", "2", "--d", "2", "--k", "4", "--seed", "11"];
    let a = linset(&args);
    let b = linset(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = linset(&["construct", "random", "--q", "3", "--n", "2", "--d", "2", "--k", "4", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn construct_then_analyze_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["construct", "jv", "--q", "3", "--t", "5", "--ks", "2,2,2"],
        vec!["construct", "caserta", "--q", "2", "--t", "3", "--ks", "2,1", "--swap", "1"],
        vec!["construct", "product", "--q", "2", "--t", "2", "--s", "2", "--ks", "2,1"],
        vec!["construct", "prime", "--q", "3", "--n", "2", "--d", "2", "--r", "1"],
        vec!["construct", "random", "--q", "4", "--n", "2", "--d", "1", "--k", "3"],
    ] {
        let built = linset(&args);
        assert_eq!(code(&built), 0, "{args:?}");
        let file = write(&dir, "built.json", &built.stdout);
        let analyzed = linset(&["analyze", &file]);
        assert_eq!(code(&analyzed), 0, "{args:?}");
        assert_eq!(stdout_json(&built)["report"], stdout_json(&analyzed)["report"], "{args:?}");
    }
}

#[test]
fn verify_identities_on_a_random_subspace() {
    let dir = tempfile::tempdir().unwrap();
    let built = linset(&["construct", "random", "--q", "2", "--n", "3", "--d", "2", "--k", "6"]);
    let file = write(&dir, "random.json", &built.stdout);
    let out = linset(&["verify", "identities", &file]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["oracle_agrees"], true);
    assert_eq!(doc["identities"]["mod_q"], true);
}

#[test]
fn verify_subgeometry_with_and_without_omega() {
    let dir = tempfile::tempdir().unwrap();
    let built = linset(&["construct", "frobenius", "--q", "2", "--n", "3"]);
    let file = write(&dir, "graph.json", &built.stdout);
    let mut omega = stdout_json(&built)["subspace"].clone();

    // (0, 0, 1) lies off X_2 = 0: I_P = (q^n − 1)/(q − 1) = 7 and the bound 8 + 7 is met.
    omega["basis"] = json!([[[0, 0, 0], [0, 0, 0], [1, 0, 0]]]);
    let off = write(&dir, "off.json", omega.to_string().as_bytes());
    let doc = stdout_json(&linset(&["verify", "subgeometry", &file, "--omega", &off]));
    assert_eq!((doc["certificate"]["i_omega"].clone(), doc["certificate"]["bound"].clone()), (json!(7), json!(15)));
    assert_eq!(doc["certificate"]["equality"], true);

    // (1, 1, 0) lies on X_2 = 0: I_P = q^{n−1} + 1 = 5.
    omega["basis"] = json!([[[1, 0, 0], [1, 0, 0], [0, 0, 0]]]);
    let on = write(&dir, "on.json", omega.to_string().as_bytes());
    let doc = stdout_json(&linset(&["verify", "subgeometry", &file, "--omega", &on]));
    assert_eq!((doc["certificate"]["i_omega"].clone(), doc["certificate"]["slack"].clone()), (json!(5), json!(2)));

    // (1, 0, 0) is not a point of the set, so the hypothesis fails.
    omega["basis"] = json!([[[1, 0, 0], [0, 0, 0], [0, 0, 0]]]);
    let bad = write(&dir, "bad.json", omega.to_string().as_bytes());
    assert_eq!(code(&linset(&["verify", "subgeometry", &file, "--omega", &bad])), 2);

    let out = linset(&["verify", "subgeometry", &file]);
    assert_eq!(code(&out), 0);
    assert!(stdout_json(&out)["certificate"]["slack"].as_i64().unwrap() >= 0);
}

#[test]
fn rank_gate_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let jv = write(&dir, "jv.json", &linset(&["construct", "jv", "--q", "2", "--t", "5", "--ks", "3,2"]).stdout);
    let refused = linset(&["verify", "rank", &jv]);
    assert_eq!(code(&refused), 2);
    assert!(String::from_utf8_lossy(&refused.stderr).contains("gate"));
    let forced = linset(&["verify", "rank", &jv, "--override-rank-gate"]);
    assert_eq!(code(&forced), 0);
    assert_eq!(stdout_json(&forced)["gate_overridden"], true);

    let prime =
        write(&dir, "p.json", &linset(&["construct", "prime", "--q", "3", "--n", "2", "--d", "2", "--r", "1"]).stdout);
    let doc = stdout_json(&linset(&["verify", "rank", &prime]));
    assert_eq!((doc["certificate"]["bound"].clone(), doc["certificate"]["equality"].clone()), (json!(91), json!(true)));
}

#[test]
fn classify_reports_proper_d_minimum() {
    let dir = tempfile::tempdir().unwrap();
    let jv = write(&dir, "jv.json", &linset(&["construct", "jv", "--q", "3", "--t", "5", "--ks", "2,2,2"]).stdout);
    let doc = stdout_json(&linset(&["verify", "classify", &jv]));
    assert_eq!(doc["class"], "proper-d-minimum");
    assert_eq!(doc["classification"]["d_minimum_value"], 325);
}

#[test]
fn sweep_reference_suite_passes() {
    let suite = reference_suite();
    let out = linset(&["sweep", suite.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 13);
    assert!(results.iter().all(|r| r["verdict"] == "pass"));

    let csv = linset(&["sweep", suite.to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,n,d,k,size,bound,slack,class"));
    assert!(lines.any(|l| l == "3,5,2,6,325,325,0,proper-d-minimum"));
}

#[test]
fn sweep_flags_a_wrong_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let suite = json!({
        "name": "wrong",
        "instances": [{ "name": "jv", "build": { "kind": "jv", "q": 2, "t": 5, "ks": [3, 2] }, "expect": { "size": 18 } }]
    });
    let file = write(&dir, "suite.json", suite.to_string().as_bytes());
    let out = linset(&["sweep", &file]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["results"][0]["mismatches"][0], "size 17 expected 18");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&linset(&["construct", "jv", "--q", "2", "--t", "5", "--ks", "3,2", "--bogus"])), 2);
    assert_eq!(code(&linset(&["construct", "jv", "--q", "6", "--t", "5", "--ks", "3,2"])), 2);
    assert_eq!(code(&linset(&["construct", "jv", "--q", "2", "--t", "5", "--ks", "2,3"])), 2);
    assert_eq!(code(&linset(&["analyze", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&linset(&["frobnicate"])), 2);
    let junk = write(&dir, "junk.json", b"{\"basis\": 3}");
    assert_eq!(code(&linset(&["analyze", &junk])), 2);
    let suite = write(&dir, "suite.json", br#"{"name": "x", "instances": [], "extra": 1}"#);
    assert_eq!(code(&linset(&["sweep", &suite])), 2);
}

#[test]
fn table_format_has_one_row_per_instance() {
    let out = linset(&["construct", "caserta", "--q", "3", "--t", "2", "--ks", "2,1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("name"));
    assert!(lines[1].contains("82") && lines[1].contains("proper-d-minimum"));
}
