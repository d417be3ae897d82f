//! End-to-end runs of the `kmult` binary.

use std::process::{Command, Output};

use kmult::algebra::parse_rational;
use kmult::blattner::{lowest_k_type, multiplicity_direction, HcParamG, HcParamK};
use kmult::{PiecewisePolynomial, UniPoly};
use serde_json::Value;

fn kmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmult")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = kmult(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

fn g(a: &[&str], b: &[&str]) -> HcParamG {
    let r = |x: &[&str]| x.iter().map(|s| parse_rational(s).unwrap()).collect();
    HcParamG::new(r(a), r(b))
}

const U22_QUERY: [&str; 9] =
    ["mult", "--mu", "[[207/2,-3/2],[3/2,-207/2]]", "--lambda", "[[5/2,-3/2],[3/2,-5/2]]", "-p", "2", "-q", "2"];

#[test]
fn multiplicity_in_u22() {
    let o = kmult(&U22_QUERY);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "101");
    assert!(String::from_utf8_lossy(&o.stderr).contains("time:"));

    let mut args = U22_QUERY.to_vec();
    args.extend(["--verbose", "--oracle"]);
    let v = json(&args);
    assert_eq!(v["multiplicity"], "101");
    assert_eq!(v["oracle"], "101");
    let total: i64 = v["ledger"].as_array().unwrap().iter().map(|e| e["term"].as_str().unwrap().parse::<i64>().unwrap()).sum();
    assert_eq!(total, 101);
}

#[test]
fn streamlined_direction() {
    let args = ["direction", "--lambda", "[[9,7],[-1,-2,-13]]", "--v", "[[1,0],[0,0,-1]]", "-p", "2", "-q", "3", "--streamline"];
    let o = kmult(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "[[1, [0, inf]]]");
}

#[test]
fn lowest_and_vogan_lowest() {
    let args = ["lowest", "--lambda", "[[5/2,-3/2],[3/2,-5/2]]", "-p", "2", "-q", "2"];
    assert_eq!(stdout(&kmult(&args)).trim(), "[[7/2,-3/2],[3/2,-7/2]]");
    let args = ["vogan-lowest", "--lambda", "[[5/2,-3/2],[3/2,-5/2]]", "-p", "2", "-q", "2"];
    assert_eq!(stdout(&kmult(&args)).trim(), "[[3,-1],[1,-3]]");
}

#[test]
fn json_round_trips() {
    let v = json(&["lowest", "--lambda", "[[11/2,7/2,3/2],[9/2,5/2,1/2]]", "-p", "3", "-q", "3"]);
    let k: HcParamK = serde_json::from_value(v["k_type"].clone()).unwrap();
    assert_eq!(k, lowest_k_type(&g(&["11/2", "7/2", "3/2"], &["9/2", "5/2", "1/2"]), 3, 3).unwrap());

    let v = json(&["direction", "--lambda", "[[9,7],[-1,-2,-13]]", "--v", "[[1,0],[0,0,-1]]", "-p", "2", "-q", "3"]);
    let pw: PiecewisePolynomial = serde_json::from_value(v["pieces"].clone()).unwrap();
    let vk: HcParamK = serde_json::from_value(serde_json::json!([["1", "0"], ["0", "0", "-1"]])).unwrap();
    assert_eq!(pw, multiplicity_direction(&g(&["9", "7"], &["-1", "-2", "-13"]), &vk, 2, 3).unwrap());
    assert_eq!(v["asymptotic"], true);

    let v = json(&["partition", "--pattern", "aabb", "--symbolic-ray", "[[0,0,0],[1,1,-1]]", "--sample-t", "3"]);
    let poly: UniPoly = serde_json::from_value(v["poly"].clone()).unwrap();
    assert_eq!(poly, UniPoly::from_ints(&[1, 1]));
    assert!(!v["tope"]["bases"].as_array().unwrap().is_empty());
}

#[test]
fn partition_counts() {
    let v = json(&["partition", "--pattern", "aabb", "--h", "[1,1,-1]", "--oracle"]);
    assert_eq!((v["count"].as_str(), v["oracle"].as_str()), (Some("2"), Some("2")));
    // the same system given by its A slots, ambient coordinates
    let v = json(&["partition", "--pattern", "[1,2]", "-p", "2", "-q", "2", "--h", "[1,1,-1,-1]"]);
    assert_eq!(v["count"], "2");
    let v = json(&["mpns", "--pattern", "aabb", "--h", "[0,0,0]"]);
    assert!(v["bases"].as_array().unwrap().iter().all(|b| b.as_array().unwrap().len() == 3));
}

#[test]
fn identical_requests_give_identical_output() {
    let args = ["--json", "direction", "--lambda", "[[57/2,39/2,3/2],[51/2,5/2,-155/2]]", "--v", "[[1,0,0],[0,0,-1]]", "-p", "3", "-q", "3"];
    let first = kmult(&args);
    let second = kmult(&["--threads", "1"].iter().chain(&args).copied().collect::<Vec<_>>());
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn invalid_input_exits_with_two() {
    let o = kmult(&["lowest", "--lambda", "[[5/2,-3/2],[3/2 -5/2]]", "-p", "2", "-q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("'-5/2' at position 18"), "{err}");

    let o = kmult(&["--json", "lowest", "--lambda", "[[3,-1],[1,-3]]", "-p", "2", "-q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "invalid_input");
    assert!(v["error"]["message"].as_str().unwrap().contains("parity"));

    let o = kmult(&["direction", "--lambda", "[[9,7],[-1,-2,-13]]", "--v", "[[1,0],[0,0,0]]", "-p", "2", "-q", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_selftest_passes() {
    let o = kmult(&["selftest", "--max-size", "3", "--bound", "3", "--samples", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.contains("PASS")));
}
