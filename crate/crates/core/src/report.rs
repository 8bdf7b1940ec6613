//! Check results and the machine-readable verification report.

use serde::{Deserialize, Serialize};
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One exact assertion: what was computed and what it was compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    /// Short statement of the mathematical claim being checked.
    pub claim: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
}

impl CheckResult {
    pub fn compare<T: PartialEq + Display>(id: &str, description: &str, claim: &str, computed: T, expected: T) -> Self {
        CheckResult {
            id: id.into(),
            description: description.into(),
            claim: claim.into(),
            status: if computed == expected { Status::Pass } else { Status::Fail },
            computed: computed.to_string(),
            expected: expected.to_string(),
        }
    }

    pub fn holds(id: &str, description: &str, claim: &str, ok: bool) -> Self {
        Self::compare(id, description, claim, ok, true)
    }

    pub fn failed(id: &str, description: &str, claim: &str, error: impl Display) -> Self {
        CheckResult {
            id: id.into(),
            description: description.into(),
            claim: claim.into(),
            status: Status::Fail,
            computed: format!("error: {error}"),
            expected: "success".into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub runtime_ms: u64,
}

impl CheckRecord {
    pub fn new(r: CheckResult, runtime_ms: u64) -> Self {
        CheckRecord {
            id: r.id,
            description: r.description,
            paper_ref: r.claim,
            status: r.status,
            computed: r.computed,
            expected: r.expected,
            runtime_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub tool_version: String,
    pub config_echo: std::collections::BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Verification report\n\nTool version {}\n\n", self.tool_version);
        s += "| id | status | computed | expected | ms |\n|---|---|---|---|---|\n";
        for c in &self.checks {
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            s += &format!("| {} | {} | {} | {} | {} |\n", c.id, st, md(&c.computed), md(&c.expected), c.runtime_ms);
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        s += &format!("\n{} checks, {} failed\n", self.checks.len(), failed);
        s
    }
}

fn md(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names() {
        let r = VerificationReport {
            tool_version: "0".into(),
            config_echo: Default::default(),
            checks: vec![CheckRecord::new(CheckResult::compare("x", "d", "c", 1, 1), 3)],
        };
        let j = r.to_json();
        assert!(j.contains("\"toolVersion\"") && j.contains("\"paperRef\"") && j.contains("\"runtimeMs\""));
        assert!(j.contains("\"status\": \"pass\""));
        let back: VerificationReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        assert!(r.all_pass());
        assert!(r.to_markdown().contains("| x | pass |"));
    }

    #[test]
    fn mismatch_fails() {
        assert_eq!(CheckResult::compare("x", "", "", 2, 3).status, Status::Fail);
        assert!(!CheckResult::holds("x", "", "", false).passed());
    }
}
