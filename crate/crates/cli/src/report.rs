//! JSON report assembled from suite results.

use serde::Serialize;
use serde_json::Value;
use toric_boundary::CheckOutcome;

pub const SCHEMA: &str = "toric-boundary-report/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub tested: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    pub fn from_outcome(name: impl Into<String>, o: CheckOutcome) -> Check {
        Check {
            name: name.into(),
            pass: o.pass,
            tested: o.tested,
            witness: o.witness,
            detail: None,
        }
    }

    /// Single yes/no check; a failure must name what went wrong.
    pub fn verdict(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Check {
        Check {
            name: name.into(),
            pass,
            tested: 1,
            witness: (!pass).then(witness),
            detail: None,
        }
    }

    /// A check that could not run.
    pub fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Check {
        Check {
            name: name.into(),
            pass: false,
            tested: 0,
            witness: Some(format!("error: {e}")),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Check {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub verdict: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(name: &str, mut checks: Vec<Check>) -> SuiteReport {
        for c in &mut checks {
            if !c.pass && c.witness.is_none() {
                c.witness = Some(c.name.clone());
            }
        }
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        SuiteReport {
            name: name.to_string(),
            verdict: if pass { "pass" } else { "fail" },
            checks,
            elapsed_ms: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub seed: u64,
    pub config: Vec<(String, String)>,
    pub suites: Vec<SuiteReport>,
    pub all_pass: bool,
}

impl Report {
    pub fn new(seed: u64, config: Vec<(String, String)>, suites: Vec<SuiteReport>) -> Report {
        let all_pass = suites.iter().all(SuiteReport::pass);
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            config,
            suites,
            all_pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_always_carry_a_witness() {
        let s = SuiteReport::new(
            "x",
            vec![Check {
                name: "lonely".into(),
                pass: false,
                tested: 3,
                witness: None,
                detail: None,
            }],
        );
        assert!(!s.pass());
        assert_eq!(s.checks[0].witness.as_deref(), Some("lonely"));
        assert!(!SuiteReport::new("empty", vec![]).pass());
    }

    #[test]
    fn report_shape() {
        let r = Report::new(1, vec![("seed".into(), "1".into())], vec![SuiteReport::new("a", vec![Check::verdict("ok", true, String::new)])]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["all_pass"], true);
        assert_eq!(v["suites"][0]["verdict"], "pass");
        assert!(v["suites"][0].get("elapsed_ms").is_none());
    }
}
