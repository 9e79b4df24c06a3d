//! Report rendering and exit status.

use serde::Serialize;

use qflag_core::report::{Status, SuiteReport};

use crate::config::{Config, ConfigView};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct Document<'r> {
    version: &'static str,
    config: ConfigView,
    reports: &'r [SuiteReport],
}

/// JSON keys appear in declaration order, so equal inputs give equal bytes.
pub fn emit_report(cfg: &Config, reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => {
            let doc = Document {
                version: REPORT_VERSION,
                config: cfg.view(),
                reports,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.to_string()).collect();
            s.push_str(&format!("overall: {}\n", overall(reports)));
            s
        }
    }
}

/// Fail if any case fails, else inconclusive if any is, else pass.
pub fn overall(reports: &[SuiteReport]) -> Status {
    let statuses: Vec<Status> = reports.iter().map(SuiteReport::status).collect();
    if statuses.contains(&Status::Fail) {
        Status::Fail
    } else if statuses.contains(&Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

/// 0 all pass, 1 any fail, 3 inconclusive without failures.
pub fn exit_code(reports: &[SuiteReport]) -> i32 {
    match overall(reports) {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qflag_core::report::CaseResult;

    #[test]
    fn empty_document() {
        let s = emit_report(&Config::default(), &[], Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["reports"], serde_json::json!([]));
        assert_eq!(v["version"], "1");
        assert_eq!(v["config"]["oreBound"], 3);
        assert!(s.find("\"version\"").unwrap() < s.find("\"config\"").unwrap());
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn statuses() {
        let pass = SuiteReport::with_cases("s", vec![CaseResult::pass("a", "x", "x")]);
        let s = emit_report(&Config::default(), std::slice::from_ref(&pass), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let case = &v["reports"][0]["cases"][0];
        assert_eq!(case["status"], "pass");
        assert_eq!(case["witness"], "");
        let keys: Vec<&String> = case.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6);
        let inc = SuiteReport::with_cases("i", vec![CaseResult::inconclusive("b", "", "", "bound")]);
        assert_eq!(exit_code(&[pass.clone(), inc.clone()]), 3);
        let fail = SuiteReport::with_cases("f", vec![CaseResult::fail("c", "", "", "r")]);
        assert_eq!(exit_code(&[pass, inc, fail]), 1);
    }
}
