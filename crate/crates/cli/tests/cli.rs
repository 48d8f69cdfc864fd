use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conflop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conflop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn mc_matches_relations() {
    let mc = json(&["mc"]);
    let rel = json(&["relations"]);
    let pick = |v: &Value| -> Vec<(String, Value)> {
        v.as_array()
            .unwrap()
            .iter()
            .map(|r| (r["component"].as_str().unwrap().to_string(), r["element"].clone()))
            .collect()
    };
    assert_eq!(pick(&mc), pick(&rel));
    assert_eq!(pick(&mc).len(), 4);
}

#[test]
fn sphere_three_has_dims_two_three() {
    let v = json(&["psi", "--object", "sphere:3"]);
    assert_eq!(v["dims"], serde_json::json!([2, 3]));
    assert_eq!(v["matches_catalog"], Value::Bool(true));
}

#[test]
fn stable_from_file() {
    let f = tmp("vplus2.json");
    let out = run(&["rep", "make", "--kind", "vplus:2", "--out", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&["stable", "--rep", f.to_str().unwrap(), "--z0", "-1,2", "--z1", "1,1"]);
    assert_eq!(v["stability"]["verdict"], "Stable");
    let v = json(&["stable", "--rep", f.to_str().unwrap(), "--z0", "1,1", "--z1", "-1,2"]);
    assert_eq!(v["stability"]["verdict"], "Unstable");
    assert_eq!(v["stability"]["witness"]["dims"], serde_json::json!([0, 1]));
}

#[test]
fn identical_runs_give_identical_json() {
    for args in [
        vec!["--json", "--seed", "7", "psi", "--object", "table:Lc:2"],
        vec!["--json", "stable", "--kind", "vminus:2", "--z0", "1,1", "--z1", "-1,2"],
        vec!["--json", "arc", "--op", "flop", "--catalog", "S_1"],
        vec!["--json", "verify-all", "--only", "1,9"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "make", "--kind", "vplus:0"]).status.code(), Some(2));
    assert_eq!(run(&["truncate", "--n", "13"]).status.code(), Some(2));
    assert_eq!(run(&["flop", "--point", "1,1", "--z0", "-1,2", "--z1", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["stable", "--kind", "vplus:2", "--z0", "1,1", "--z1", "2,2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-all", "--only", "12"]).status.code(), Some(2));

    // A well-formed file with a non-nilpotent cycle is a failed check.
    let f = tmp("broken.json");
    std::fs::write(
        &f,
        r#"{"dims":[1,1],"x":[["1"]],"z":[["1"]],"y":[["1"]],"w":[["0"]]}"#,
    )
    .unwrap();
    let out = run(&["rep", "check", "--rep", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flop_commands() {
    let v = json(&["flop", "--dimvec", "1,2"]);
    assert_eq!(v["image"], serde_json::json!([3, 2]));
    let v = json(&["flop", "--point", "1,1"]);
    assert_eq!(v["stability"]["verdict"], "Unstable");
    assert_eq!(v["witness_is_simple_v1"], Value::Bool(true));
    assert_eq!(v["k_class"], serde_json::json!([1, 1]));
}

#[test]
fn arc_flop_matches_primed_catalog() {
    for k in [-1, 2] {
        let flopped = json(&["arc", "--op", "flop", "--catalog", &format!("S_{k}")]);
        let primed = json(&["arc", "--catalog", &format!("S'_{}", -k)]);
        assert_eq!(flopped["invariants"], primed["invariants"], "k={k}");
    }
    let v = json(&["arc", "--catalog", "S_3"]);
    assert_eq!(v["invariants"]["seg_crossings"], 2);
}

#[test]
fn arc_from_file_round_trips() {
    let v = json(&["arc", "--op", "twist", "--catalog", "S_0"]);
    let f = tmp("twisted.json");
    std::fs::write(&f, serde_json::to_string(&v["arc"]).unwrap()).unwrap();
    let w = json(&["arc", "--arc", f.to_str().unwrap()]);
    assert_eq!(v["invariants"], w["invariants"]);
}

#[test]
fn config_supplies_defaults() {
    let f = tmp("cfg.json");
    std::fs::write(&f, r#"{"z0":["1","1"],"z1":["-1","2"],"n":7}"#).unwrap();
    let v = json(&["--config", f.to_str().unwrap(), "stable", "--kind", "point:1,1"]);
    assert_eq!(v["params"]["chamber"], "Zeta0Less");
    assert_eq!(v["stability"]["verdict"], "Unstable");
    let v = json(&["--config", f.to_str().unwrap(), "psi", "--object", "table:L0"]);
    assert_eq!(v["n"], 7);
    std::fs::write(&f, r#"{"zeta":1}"#).unwrap();
    assert_eq!(run(&["--config", f.to_str().unwrap(), "mc"]).status.code(), Some(2));
}

#[test]
fn ext_and_scan() {
    let v = json(&["ext", "--from", "simple:0", "--to", "simple:0"]);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["euler"], 0);
    let v = json(&["scan", "--bound", "3"]);
    let dims = &v["chambers"][0]["dims"];
    assert_eq!(dims, &serde_json::json!([[0, 1], [1, 0], [1, 1], [1, 2], [2, 1]]));
}

#[test]
fn truncate_and_ainfty() {
    let v = json(&["truncate", "--n", "4"]);
    let row = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["source"] == "V0" && r["target"] == "V0" && r["len"] == 4)
        .unwrap();
    assert_eq!(row["dim"], 9);
    let v = json(&["ainfty-check", "--arity", "4"]);
    assert!(v["violation"].is_null());
}
