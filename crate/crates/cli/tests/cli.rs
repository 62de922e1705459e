use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn twocat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twocat")).args(args).output().expect("binary runs")
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

const SAMPLE: &str = r#"{
    "ring": {"kind": "Zmod", "m": 4},
    "matrices": {"m": [[2, 4], [6, 8]]},
    "modules": {"R": {"generators": 1}, "Z2": {"invariant_factors": [2]}},
    "arrows": {
        "a": {"A1": "R", "A0": "R", "a": [[2]]},
        "b": {"A1": "Z2", "A0": "R", "a": [[2]]}
    },
    "morphisms": {
        "id": {"source": "a", "target": "a", "f0": [[1]], "f1": [[1]]},
        "g": {"source": "a", "target": "b", "f0": [[1]], "f1": [[1]]}
    },
    "scg": {
        "example": {"ce": {"cyclic": 2}, "cee": {"cyclic": 2}, "boundary": [0, 0], "bracket": [[0, 0], [0, 1]]},
        "perturbed": {"ce": {"cyclic": 2}, "cee": {"cyclic": 2}, "boundary": [0, 1], "bracket": [[0, 0], [0, 1]]}
    }
}"#;

#[test]
fn snf_reports_diagonal() {
    let f = file(r#"{"ring": {"kind": "Z"}, "matrices": {"m": [[2, 4], [6, 8]]}}"#);
    let out = twocat(&["snf", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["decomposition"]["diagonal"], serde_json::json!([2, 4]));
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn classify_identity_all_flags() {
    let f = file(SAMPLE);
    let out = twocat(&["classify", f.path().to_str().unwrap(), "--name", "id"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for flag in ["faithful", "fully_faithful", "cofaithful", "fully_cofaithful"] {
        assert_eq!(v["result"][flag]["value"], Value::Bool(true), "{flag}");
    }
}

#[test]
fn verify_cnobili_passes() {
    let out = twocat(&["verify", "--suite", "cnobili", "--ring", "Zmod:4", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"][0]["passed"], 50);
    assert_eq!(v["result"][0]["failed"], 0);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--suite", "sigma-pip", "--ring", "Z", "--trials", "20", "--seed", "3"];
    assert_eq!(twocat(&args).stdout, twocat(&args).stdout);
}

#[test]
fn every_construction_runs() {
    let f = file(SAMPLE);
    let p = f.path().to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["snf", p],
        vec!["hom", p, "--source", "Z2", "--target", "R"],
        vec!["ext", p, "--source", "Z2", "--target", "Z2", "--degree", "2"],
        vec!["ch", p, "--name", "a"],
        vec!["pi", p, "--source", "a", "--target", "b"],
        vec!["replace", p, "--name", "b"],
        vec!["two-kernel", p, "--name", "g"],
        vec!["two-cokernel", p, "--name", "g"],
        vec!["sigma", p, "--name", "a"],
        vec!["omega", p, "--name", "a"],
        vec!["pip", p, "--name", "g"],
        vec!["copip", p, "--name", "g"],
        vec!["classify", p, "--name", "g"],
        vec!["dis", p, "--module", "Z2"],
        vec!["scg-check", p, "--name", "example"],
        vec!["scg-search", p, "--ce", "trivial", "--cee", "trivial"],
    ];
    for args in runs {
        let out = twocat(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["passed"], Value::Bool(true), "{args:?}");
        let text = twocat(&[&args[..], &["--format", "text"]].concat());
        assert_eq!(text.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&text.stdout).contains("passed: true"));
    }
}

#[test]
fn ext_of_z2_over_z4() {
    let f = file(SAMPLE);
    let out = twocat(&["ext", f.path().to_str().unwrap(), "--source", "Z2", "--target", "Z2", "--degree", "2"]);
    assert_eq!(json(&out)["result"]["invariant_factors"], serde_json::json!(["2"]));
}

#[test]
fn scg_search_trivial_groups() {
    let f = file(SAMPLE);
    let out = twocat(&["scg-search", f.path().to_str().unwrap(), "--ce", "trivial", "--cee", "trivial"]);
    assert_eq!(json(&out)["result"]["count"], 1);
}

#[test]
fn scg_violation_exits_one() {
    let f = file(SAMPLE);
    let out = twocat(&["scg-check", f.path().to_str().unwrap(), "--name", "perturbed"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let axioms: Vec<u64> = v["result"]["violations"].as_array().unwrap().iter().map(|x| x["axiom"].as_u64().unwrap()).collect();
    assert!(axioms.contains(&2));
}

#[test]
fn malformed_input_exits_two_with_location() {
    let bad = SAMPLE.replace(r#""f0": [[1]], "f1": [[1]]}
    }"#, r#""f0": [[2]], "f1": [[1]]}
    }"#);
    let f = file(&bad);
    let out = twocat(&["classify", f.path().to_str().unwrap(), "--name", "g"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.morphisms.g"));

    let f = file("{ not json");
    assert_eq!(twocat(&["snf", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(twocat(&["snf", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(twocat(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(twocat(&["verify", "--suite", "pi1", "--ring", "Zmod:1"]).status.code(), Some(2));
}

#[test]
fn ambiguous_name_is_an_input_error() {
    let f = file(SAMPLE);
    let out = twocat(&["ch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("choose one"));
}

#[test]
fn non_free_target_is_rejected() {
    let f = file(
        r#"{"ring": {"kind": "Z"}, "modules": {"T": {"invariant_factors": [2]}},
            "arrows": {"x": {"A1": "T", "A0": "T", "a": [[1]]}},
            "morphisms": {"i": {"source": "x", "target": "x", "f0": [[1]], "f1": [[1]]}}}"#,
    );
    assert_eq!(twocat(&["two-kernel", f.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn generated_instances_load() {
    let out = twocat(&["generate", "--ring", "Zmod:4", "--seed", "1", "--kind", "morphism", "--count", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, twocat(&["generate", "--ring", "Zmod:4", "--seed", "1", "--count", "2"]).stdout);
    let f = file(&String::from_utf8(out.stdout).unwrap());
    let out = twocat(&["two-cokernel", f.path().to_str().unwrap(), "--name", "f1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn dis_of_non_discrete_arrow_fails() {
    let f = file(SAMPLE);
    let out = twocat(&["dis", f.path().to_str().unwrap(), "--arrow", "a"]);
    assert_eq!(out.status.code(), Some(2));
}
