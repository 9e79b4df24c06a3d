//! Structured outcomes of verification suites.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One checked identity. A failing case always carries a nonempty witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub witness: String,
    pub ms: u64,
}

impl CaseResult {
    pub fn pass(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        CaseResult {
            name: name.into(),
            status: Status::Pass,
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: String::new(),
            ms: 0,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        let mut witness = witness.into();
        if witness.is_empty() {
            witness = "(no residual available)".into();
        }
        CaseResult {
            name: name.into(),
            status: Status::Fail,
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness,
            ms: 0,
        }
    }

    pub fn inconclusive(
        name: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CaseResult {
            name: name.into(),
            status: Status::Inconclusive,
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: witness.into(),
            ms: 0,
        }
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn check(
        name: impl Into<String>,
        ok: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        if ok {
            Self::pass(name, lhs, rhs)
        } else {
            Self::fail(name, lhs, rhs, witness)
        }
    }

    /// Runs `f` and stamps the elapsed wall time on its result.
    pub fn timed(f: impl FnOnce() -> CaseResult) -> CaseResult {
        let start = Instant::now();
        let mut c = f();
        c.ms = start.elapsed().as_millis() as u64;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            cases: Vec::new(),
        }
    }

    pub fn with_cases(suite: impl Into<String>, cases: Vec<CaseResult>) -> Self {
        SuiteReport {
            suite: suite.into(),
            cases,
        }
    }

    pub fn push(&mut self, case: CaseResult) {
        self.cases.push(case);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn has_failures(&self) -> bool {
        self.cases.iter().any(|c| c.status == Status::Fail)
    }

    /// Aggregate: fail if any case fails, else inconclusive if any is, else pass.
    pub fn status(&self) -> Status {
        if self.has_failures() {
            Status::Fail
        } else if self.cases.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} ({} pass, {} fail, {} inconclusive)",
            self.suite,
            self.status(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        )?;
        for c in &self.cases {
            write!(f, "  [{}] {}", c.status, c.name)?;
            if !c.witness.is_empty() {
                write!(f, "  witness: {}", c.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
