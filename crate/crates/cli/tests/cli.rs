use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn scratch(name: &str, v: &Value) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

const QUINTIC: [&str; 7] = ["quintic", "--q", "[1:i:0]", "--q", "[0:1:i]", "--q", "[1:1:i]"];

#[test]
fn degree_and_composition() {
    assert_eq!(run(&["degree", "--map", "y*z:x*z:x*y"]), (0, json!({ "degree": 2 })));
    let (code, v) = run(&["compose", "--f", "y*z:x*z:x*y", "--g", "y*z:x*z:x*y"]);
    assert_eq!(code, 0);
    assert_eq!(v["map"], "x : y : z");
}

#[test]
fn inverse_is_solved_for() {
    let (code, v) = run(&["inverse", "--map", "x*z + y^2 : y*z : z^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["map"], "x*z - y^2 : y*z : z^2");
}

#[test]
fn base_points_and_characteristic() {
    let (_, v) = run(&["basepoints", "--map", "y*z:x*z:x*y"]);
    let mut pts: Vec<&str> = v["base_points"].as_array().unwrap().iter().map(|p| p["point"].as_str().unwrap()).collect();
    pts.sort();
    assert_eq!(pts, ["[0:0:1]", "[0:1:0]", "[1:0:0]"]);
    let (_, v) = run(&["characteristic", "--map", "y*z:x*z:x*y"]);
    assert_eq!(v["mults"], json!([1, 1, 1]));
    assert_eq!(v["noether"], true);
}

#[test]
fn quintic_letter_carries_its_key() {
    let (code, q) = run(&QUINTIC);
    assert_eq!(code, 0);
    assert_eq!(q["degree"], 5);
    let word = scratch("quintic_word.json", &json!([q["letter"]]));
    assert_eq!(run(&["phi", "--word", word.to_str().unwrap()]), (0, json!({ "support": ["9/25"] })));
    let (_, c) = run(&["characteristic", "--map", q["map"].as_str().unwrap()]);
    assert_eq!(c["mults"], json!([2, 2, 2, 2, 2, 2]));

    let twice = scratch("quintic_twice.json", &json!([q["letter"], q["letter"]]));
    assert_eq!(run(&["phi", "--word", twice.to_str().unwrap()]).1, json!({ "support": [] }));
}

#[test]
fn cubics_decompose_into_quadratics() {
    let (_, c) = run(&["cubic", "--r", "[1:1:1]"]);
    let map = c["map"].as_str().unwrap();
    let (code, d) = run(&["decompose", "--map", map]);
    assert_eq!(code, 0);
    assert_eq!(d["degrees"], json!([2, 2]));
    let (_, m) = run(&["member", "jcirc", "--map", map]);
    assert_eq!(m["member"], true);
    assert_eq!(run(&["member", "jstar", "--map", "x*z + y^2 : y*z : x*y"]).1["member"], false);
}

#[test]
fn spinor_keys() {
    let (code, v) = run(&["spinor", "--vectors", r#"[["0","-t","1"],["t","1","1"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["support"], json!(["1/4"]));
    let (_, v) = run(&["spinor", "--vectors", r#"[["0","-t^3-t","1"]]"#, "--form", "split"]);
    assert_eq!(v["support"], json!(["0"]));
}

#[test]
fn exit_codes() {
    let (code, v) = run(&["degree", "--map", "x:y"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "Parse");
    let (code, v) = run(&["quadratic", "--q", "[1:0:0]"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "CollinearityViolation");
    assert_eq!(run(&["inverse", "--map", "x^2:y^2:z^2"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let a = Command::new(env!("CARGO_BIN_EXE_cremona")).args(QUINTIC).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_cremona")).args(QUINTIC).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verification_suites_pass() {
    for suite in ["char", "stereo", "f0", "reassignment"] {
        let (code, v) = run(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["passed"], true);
    }
}
