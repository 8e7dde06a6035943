//! JSON-lines reports.
//!
//! A report is a header line, one line per check and a closing summary
//! line. Only the summary carries timing, so two runs with the same inputs
//! differ in that line alone.

use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Informational record that cannot fail.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl CheckRecord {
    /// `lhs ≤ rhs + tol`.
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let ok = lhs <= rhs + tol;
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: None,
            detail: None,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            lhs: 0.0,
            rhs: 0.0,
            margin: 0.0,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            witness: None,
            detail: None,
        }
    }

    pub fn info(name: impl Into<String>, detail: Value) -> Self {
        Self {
            name: name.into(),
            lhs: 0.0,
            rhs: 0.0,
            margin: 0.0,
            status: CheckStatus::Info,
            witness: None,
            detail: Some(detail),
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(scenario: impl Into<String>, config: Value) -> Self {
        Self {
            scenario: scenario.into(),
            config,
            records: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let header = json!({
            "type": "header",
            "scenario": self.scenario,
            "version": VERSION,
            "config": self.config,
        });
        out.push_str(&header.to_string());
        out.push('\n');
        for r in &self.records {
            let mut v = serde_json::to_value(r).expect("records serialize");
            v.as_object_mut().expect("object").insert("type".into(), json!("check"));
            out.push_str(&v.to_string());
            out.push('\n');
        }
        let summary = json!({
            "type": "summary",
            "passed": self.passed(),
            "checks": self.records.len(),
            "failures": self.failures(),
            "elapsed_ms": self.elapsed_ms,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// Fixed-width table of the check records.
    pub fn summary_table(&self) -> String {
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(4).max(5);
        let mut out = format!("{} (v{})\n", self.scenario, VERSION);
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:>13}  {:>13}  {:>13}\n",
            "check", "status", "lhs", "rhs", "margin"
        ));
        for r in &self.records {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "info",
            };
            out.push_str(&format!(
                "{:<width$}  {:>6}  {:>13.6e}  {:>13.6e}  {:>13.6e}\n",
                r.name, status, r.lhs, r.rhs, r.margin
            ));
        }
        out.push_str(&format!(
            "{} checks, {} failed, {:.1} ms\n",
            self.records.len(),
            self.failures(),
            self.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_shape() {
        let mut r = Report::new("demo", json!({"n": 2}));
        r.push(CheckRecord::le("ok", 1.0, 2.0, 0.0));
        r.push(CheckRecord::le("bad", 3.0, 2.0, 0.0).with_witness(json!({"index": 4})));
        let text = r.to_json_lines();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0]["type"], "header");
        assert_eq!(lines[1]["status"], "pass");
        assert_eq!(lines[2]["status"], "fail");
        assert_eq!(lines[2]["witness"]["index"], 4);
        assert_eq!(lines[3]["failures"], 1);
        assert!(!r.passed());
        assert!(r.summary_table().contains("FAIL"));
    }
}
