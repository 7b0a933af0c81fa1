//! Machine-readable verification reports.
//!
//! A report is a list of named check results plus a per-tag summary. The
//! JSON rendering is deterministic for a fixed instance document and seed;
//! wall-clock timing therefore lives only in the human summary on stderr.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    ExpectedFailure,
    Violation,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub tag: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
}

impl CheckResult {
    pub fn pass(tag: &str, name: String) -> Self {
        CheckResult {
            name,
            tag: tag.to_string(),
            verdict: Verdict::Pass,
            detail: serde_json::Value::Null,
        }
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn expected_failure(tag: &str, name: String, detail: serde_json::Value) -> Self {
        CheckResult {
            name,
            tag: tag.to_string(),
            verdict: Verdict::ExpectedFailure,
            detail,
        }
    }

    pub fn violation(tag: &str, name: String, detail: serde_json::Value) -> Self {
        CheckResult {
            name,
            tag: tag.to_string(),
            verdict: Verdict::Violation,
            detail,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct TagCounts {
    pub pass: usize,
    pub expected_failure: usize,
    pub violation: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub expected_failure: usize,
    pub violation: usize,
    pub by_tag: BTreeMap<String, TagCounts>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, args: Vec<String>, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            args,
            seed,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        let counts = self.summary.by_tag.entry(check.tag.clone()).or_default();
        match check.verdict {
            Verdict::Pass => {
                counts.pass += 1;
                self.summary.pass += 1;
            }
            Verdict::ExpectedFailure => {
                counts.expected_failure += 1;
                self.summary.expected_failure += 1;
            }
            Verdict::Violation => {
                counts.violation += 1;
                self.summary.violation += 1;
            }
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: Vec<CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    /// 0 all pass, 1 at least one documented-expected failure, 2 at least
    /// one violation of a claimed property.
    pub fn exit_code(&self) -> i32 {
        if self.summary.violation > 0 {
            2
        } else if self.summary.expected_failure > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering for stderr.
    pub fn human_summary(&self, elapsed_ms: u128) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (tag, counts) in &self.summary.by_tag {
            let mark = if counts.violation > 0 {
                "VIOLATION"
            } else if counts.expected_failure > 0 {
                "expected-failure"
            } else {
                "ok"
            };
            out.push_str(&format!(
                "  [{mark}] {tag}: {} pass, {} expected failures, {} violations\n",
                counts.pass, counts.expected_failure, counts.violation
            ));
        }
        for check in &self.checks {
            if check.verdict != Verdict::Pass {
                out.push_str(&format!(
                    "  {:?} {} ({})\n",
                    check.verdict, check.name, check.tag
                ));
            }
        }
        out.push_str(&format!(
            "total: {} pass, {} expected failures, {} violations in {elapsed_ms} ms (exit {})\n",
            self.summary.pass,
            self.summary.expected_failure,
            self.summary.violation,
            self.exit_code()
        ));
        out
    }
}
