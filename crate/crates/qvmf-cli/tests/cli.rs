use std::process::{Command, Output};

use qvmf::qv::form::from_json;
use qvmf::qv::mforms_basis;

fn qvmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvmf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(qvmf(&["dims", "--max-weight", "4"]).status.code(), Some(0));
    assert_eq!(qvmf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qvmf(&["dims", "--max-weight", "44"]).status.code(), Some(2));
    assert_eq!(qvmf(&["qexp", "E3"]).status.code(), Some(2));
    assert_eq!(qvmf(&["verify", "--suite", "qmf"]).status.code(), Some(0));
}

#[test]
fn dims_beyond_nullspace_limit() {
    let o = qvmf(&["dims", "--max-weight", "32", "--output", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[14]["dim_M_nullspace"], 462);
    assert!(rows[16].get("dim_M_nullspace").is_none());
}

#[test]
fn basis_json_round_trips() {
    for k in [4u32, 8, 12] {
        let o = qvmf(&["basis", &k.to_string(), "--output", "json"]);
        let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let parsed: Vec<_> = rows.as_array().unwrap().iter().map(|r| from_json(&r["form"]).unwrap()).collect();
        assert_eq!(parsed, *mforms_basis(k).unwrap());
    }
}

#[test]
fn hecke_m4_spectrum() {
    let o = qvmf(&["hecke", "2", "4", "--output", "json"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut lambdas: Vec<String> = r["eigenpairs"].as_array().unwrap().iter().map(|p| p["lambda"].as_str().unwrap().to_string()).collect();
    lambdas.sort();
    assert_eq!(lambdas, ["6", "6", "9"]);
    for p in r["eigenpairs"].as_array().unwrap() {
        from_json(&p["vector"]).unwrap();
    }
}

#[test]
fn deterministic_output() {
    let a = stdout(&qvmf(&["dims", "--output", "csv"]));
    let b = stdout(&qvmf(&["dims", "--output", "csv", "--sequential"]));
    assert_eq!(a, b);
}
