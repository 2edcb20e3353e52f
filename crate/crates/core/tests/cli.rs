use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_as-descent"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("error object on stderr");
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn analyze_json_schema() {
    let out = run(&[
        "analyze", "--p", "5", "--s", "2", "--t", "1", "--modulus", "3,1,0,1,1", "--format", "json", "--oracle",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["field"]["p"], 5);
    assert_eq!(v["field"]["n"], 4);
    assert_eq!(v["field"]["modulus"], serde_json::json!([3, 1, 0, 1, 1]));
    assert_eq!(v["field"]["beta_order"], 624);
    assert_eq!(v["case"], "ONE_MOD_FOUR");
    assert_eq!(v["wilson_roots"], serde_json::json!([2, 3]));
    assert_eq!(v["G_exponents"].as_array().unwrap().len(), 24);
    assert_eq!(v["oracle_ok"], true);

    let subs = v["subgroups"].as_array().unwrap();
    assert_eq!(subs.len(), 6);
    let stable: Vec<&Value> = subs.iter().filter(|s| s["verdicts"]["1"] == true).collect();
    let exps: Vec<Value> = stable.iter().map(|s| s["exps"].clone()).collect();
    assert_eq!(
        exps,
        vec![serde_json::json!([39, 195, 351, 507]), serde_json::json!([117, 273, 429, 585])]
    );
    for s in subs {
        let poly = s["poly"].as_object().unwrap();
        assert_eq!(poly.keys().collect::<Vec<_>>(), vec!["1", "5"]);
        assert_eq!(poly["5"], serde_json::json!([1, 0, 0, 0]));
        assert!(s["gen_exp"].as_u64().unwrap() == s["exps"][0].as_u64().unwrap());
    }
    let orbit = &v["orbits"]["1"];
    assert_eq!(orbit["fixed"], serde_json::json!([1, 4]));
    assert_eq!(orbit["pairs"], serde_json::json!([[0, 2], [3, 5]]));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["analyze", "--p", "3", "--s", "2", "--t", "1,2,4", "--dims", "1,2", "--oracle"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = ["analyze", "--p", "7", "--s", "2", "--format", "text"];
    assert_eq!(run(&text).stdout, run(&text).stdout);
}

#[test]
fn char_two_auto_modulus() {
    let out = run(&["analyze", "--p", "2", "--s", "2", "--t", "1", "--t", "2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "CHAR_TWO");
    assert_eq!(v["config"]["modulus"], "auto");
    assert_eq!(v["orbits"]["2"]["fixed"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["orbits"]["1"]["fixed"], serde_json::json!([0]));
    assert_eq!(v["orbits"]["1"]["pairs"], serde_json::json!([[1, 2]]));
    assert_eq!(v["subgroups"][0]["exps"], serde_json::json!([0]));
    assert_eq!(v["kt_meets_G"]["1"], serde_json::json!([0]));
}

#[test]
fn validation_errors_exit_2() {
    let out = run(&["analyze", "--p", "5", "--s", "2", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "NOT_A_DIVISOR");

    let out = run(&["analyze", "--p", "6", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "NOT_PRIME");

    let out = run(&["analyze", "--p", "5", "--s", "2", "--modulus", "1,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "NOT_PRIMITIVE");

    let out = run(&["analyze", "--p", "3", "--s", "3", "--dims", "2", "--enum-cap", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "ENUM_CAP");
}

#[test]
fn size_cap_from_environment() {
    let out = bin()
        .args(["analyze", "--p", "5", "--s", "2"])
        .env("AS_DESCENT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "SIZE_CAP");

    let out = bin()
        .args(["analyze", "--p", "5", "--s", "2"])
        .env("AS_DESCENT_CAP", "625")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn search_poly_prints_modulus() {
    let out = run(&["search-poly", "--p", "2", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,1,1\nx^2+x+1\n");
    let out = run(&["search-poly", "--p", "3", "--n", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,1\nx+1\n");
}

#[test]
fn appendix_passes() {
    let out = run(&["appendix"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for p in [5, 13, 17] {
        assert!(text.contains(&format!("golden p = {p}: PASS")));
    }
    assert!(text.contains("{0, β^39, β^195, β^351, β^507}"));
}
