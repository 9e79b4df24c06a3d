//! Report plumbing and the `qflag` binary end to end.

use std::process::Command;

use qflag_cli::{emit_report, exit_code, run_suite, Config, Format};
use qflag_core::qalgebra::QMatrixAlgebra;
use qflag_core::report::{CaseResult, SuiteReport};
use qflag_core::scalar::ScalarQ;
use serde_json::Value;

fn json(reports: &[SuiteReport]) -> Value {
    serde_json::from_str(&emit_report(&Config::default(), reports, Format::Json)).unwrap()
}

#[test]
fn empty_report() {
    let text = emit_report(&Config::default(), &[], Format::Json);
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(at("version") < at("config") && at("config") < at("reports"));
    let v = json(&[]);
    assert_eq!(v["reports"], Value::Array(vec![]));
    assert_eq!(exit_code(&[]), 0);
}

#[test]
fn passing_case_has_empty_witness() {
    let r = SuiteReport::with_cases("demo", vec![CaseResult::pass("one", "x", "x")]);
    let v = json(std::slice::from_ref(&r));
    let case = &v["reports"][0]["cases"][0];
    assert_eq!(case["status"], "pass");
    assert_eq!(case["witness"], "");
    assert_eq!(exit_code(&[r]), 0);
}

/// The same-row relation with its `q` dropped, `t[1,2] t[1,1] = t[1,1] t[1,2]`.
#[test]
fn corrupted_relation_reports_witness() {
    let a = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
    let lhs = a.mul(&a.gen(1, 2), &a.gen(1, 1));
    let rhs = a.mul(&a.gen(1, 1), &a.gen(1, 2));
    let residual = lhs.sub(&rhs);
    let case = CaseResult::check("corrupted", residual.is_zero(), lhs.to_string(), rhs.to_string(), residual.to_string());
    let r = SuiteReport::with_cases("fixture", vec![case]);
    let v = json(std::slice::from_ref(&r));
    let case = &v["reports"][0]["cases"][0];
    assert_eq!(case["status"], "fail");
    assert!(!case["witness"].as_str().unwrap().is_empty());
    assert_eq!(exit_code(&[r]), 1);
}

#[test]
fn reports_are_reproducible() {
    let cfg = Config {
        n: 2,
        seed: 5,
        ..Config::default()
    };
    let one = emit_report(&cfg, &run_suite(&cfg).unwrap(), Format::Json);
    let two = emit_report(&cfg, &run_suite(&cfg).unwrap(), Format::Json);
    assert_eq!(one, two);
}

fn qflag(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qflag")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn cli_normalize() {
    let (code, out, _) = qflag(&["normalize", "t[1,2]*t[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), qflag_normal("t[1,1]*t[1,2]", "q^-1"));
}

fn qflag_normal(word: &str, coeff: &str) -> String {
    // the binary's own rendering of `coeff * word`
    let (_, out, _) = qflag(&["normalize", &format!("{coeff}*{word}")]);
    out.trim().to_string()
}

#[test]
fn cli_qdet_and_ore() {
    let (code, out, _) = qflag(&["qdet"]);
    assert_eq!(code, 0);
    assert!(out.contains("t[1,1]"));
    let (code, out, _) = qflag(&["ore-solve", "--set", "t[2,2]", "--r", "t[2,1]", "--s", "t[2,2]"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verified"));
}

#[test]
fn cli_exit_codes() {
    assert_eq!(qflag(&["normalize", "t[1,"]).0, 2);
    assert_eq!(qflag(&["--n", "7", "qdet"]).0, 2);
    assert_eq!(qflag(&["check", "--suite", "laplace"]).0, 0);
    let (code, out, _) = qflag(&["--n", "2", "--json", "check", "--suite", "quasidet"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"][0]["suite"], "quasidet");
}
