//! End-to-end runs of the `qdc` binary.

use std::process::{Command, Output};

use serde_json::Value as Json;

use qdc_core::{IntegralResult, PadicInt, Poly, RatFunc};

fn qdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Json> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Every JSON number is an integer.
fn no_floats(v: &Json) -> bool {
    match v {
        Json::Number(n) => n.is_u64() || n.is_i64(),
        Json::Array(a) => a.iter().all(no_floats),
        Json::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn symbolic_genocchi_round_trips() {
    let o = qdc(&["genocchi", "--n", "2", "--alpha", "1", "--symbolic"]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert!(no_floats(v));
    let f: RatFunc = serde_json::from_value(v.clone()).unwrap();
    let expected = RatFunc::new(Poly::from_ints(&[0, -2]), Poly::from_ints(&[1, 0, 1]), 1).unwrap();
    assert_eq!(f, expected);
    assert_eq!(serde_json::to_value(&f).unwrap(), *v);
}

#[test]
fn classical_dc_sum_spot_value() {
    let o = qdc(&["dcsum", "classical", "--m", "1", "--h", "1", "--k", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "\"-1/6\"");
    let o = qdc(&["dcsum", "classical", "--m", "2", "--h", "1", "--k", "3", "--output", "pretty"]);
    assert_eq!(stdout(&o).trim(), "2/27");
}

#[test]
fn q_dc_sum_reports_valuation_metadata() {
    let o = qdc(&["dcsum", "q", "--m", "3", "--h", "1", "--k", "3", "--scaled"]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert!(no_floats(v));
    let r: IntegralResult = serde_json::from_value(v.clone()).unwrap();
    assert!(r.achieved_valuation >= 6);
    assert_eq!(r.value.p(), 5);
    assert_eq!(serde_json::to_value(&r).unwrap(), *v);
}

#[test]
fn padic_values_round_trip() {
    for args in [
        vec!["genocchi", "--n", "4", "--x", "1/2"],
        vec!["dcsum", "padic", "--m", "3", "--h", "1", "--k", "3"],
        vec!["etilde", "--s", "3", "--a", "2", "--N", "5"],
        vec!["etilde", "--s", "3", "--a", "2", "--N", "3", "--integer"],
    ] {
        let o = qdc(&args);
        assert!(o.status.success(), "{args:?}");
        let v = &json_lines(&o)[0];
        let z: PadicInt = serde_json::from_value(v.clone()).unwrap();
        assert_eq!((z.p(), z.precision()), (5, 6));
        assert_eq!(serde_json::to_value(z).unwrap(), *v);
    }
}

#[test]
fn integer_and_padic_exponents_agree() {
    let a = qdc(&["etilde", "--s", "7", "--a", "3", "--N", "10"]);
    let b = qdc(&["etilde", "--s", "7", "--a", "3", "--N", "10", "--integer"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn q_one_only_for_integrate() {
    let o = qdc(&["integrate", "--power", "1", "--q", "1"]);
    assert!(o.status.success());
    // int xi dmu_{-1} = E_1(0) = -1/2
    let r: IntegralResult = serde_json::from_value(json_lines(&o)[0].clone()).unwrap();
    assert_eq!((2 * r.value.residue() + 1) % r.value.modulus(), 0);
    let o = qdc(&["genocchi", "--n", "2", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(qdc(&["genocchi"]).status.code(), Some(2));
    assert_eq!(qdc(&["nosuch"]).status.code(), Some(2));
    assert_eq!(qdc(&["--q", "3", "genocchi", "--n", "1"]).status.code(), Some(2));
    assert_eq!(qdc(&["--p", "4", "genocchi", "--n", "1"]).status.code(), Some(2));
    let o = qdc(&["etilde", "--s", "3", "--a", "5", "--N", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Json = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "nonunit_a");
    assert!(err["message"].is_string());
}

#[test]
fn explicit_verification() {
    let o = qdc(&["verify", "--identity", "eq5", "--param", "d=3", "--param", "n=4", "--param", "x=1/2"]);
    assert!(o.status.success());
    let r = &json_lines(&o)[0];
    assert_eq!(r["mode"], "symbolic-exact");
    assert_eq!(r["pass"], true);
    assert_eq!(r["difference_valuation"], "exact");
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.contains("overall: PASS"));

    let o = qdc(&["verify", "--identity", "eq5", "--param", "d=2", "--param", "n=4"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Json = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "hypothesis_violation");
    assert!(err["message"].as_str().unwrap().contains("d must be odd"));
}

#[test]
fn suite_selection_mutation_and_sampling() {
    let o = qdc(&["verify", "--suite", "default", "--identity", "eq8", "--identity", "measure_dist"]);
    assert!(o.status.success());
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 48 + 12);
    assert!(lines.iter().all(no_floats));

    let o = qdc(&["verify", "--suite", "default", "--identity", "eq8", "--mutate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json_lines(&o).iter().any(|r| r["pass"] == false));

    let s1 = qdc(&["verify", "--suite", "default", "--sample", "6", "--seed", "11"]);
    let s2 = qdc(&["verify", "--suite", "default", "--sample", "6", "--seed", "11"]);
    assert_eq!(stdout(&s1), stdout(&s2));
    assert_eq!(json_lines(&s1).len(), 6);
}

#[test]
fn manifest_file() {
    let dir = std::env::temp_dir().join(format!("qdc-manifest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, r#"{"version":1,"entries":[{"identity":"euler_reflection","grid":{"m":["0","5"]}}]}"#)
        .unwrap();
    let o = qdc(&["verify", "--manifest", path.to_str().unwrap(), "--output", "pretty"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("euler_reflection"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn csv_tables_have_headers() {
    let o = qdc(&["table", "dcsum", "--m", "1", "--k-max", "3", "--output", "csv"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["m", "h", "k", "value"]);
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[2][3], "-1/6");

    let o = qdc(&["table", "genocchi", "--n-max", "3", "--symbolic", "--output", "csv"]);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["n", "alpha", "x", "value"]);
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(&rows[2][3], "(-2*q)/(1 + q^2)");
}

#[test]
fn output_is_deterministic() {
    let args = ["dcsum", "q", "--m", "7", "--h", "2", "--k", "3", "--alpha", "2"];
    assert_eq!(stdout(&qdc(&args)), stdout(&qdc(&args)));
}
