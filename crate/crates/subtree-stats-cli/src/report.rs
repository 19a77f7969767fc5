//! Structured command reports with a stable text and JSON rendering.
//!
//! Reports are deterministic: map keys are ordered, rationals are always
//! reduced `p/q` strings, and nothing floating-point ever appears.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use subtree_stats::verify::SuiteReport;
use subtree_stats::Tree;

#[derive(Serialize)]
pub struct TreeInfo {
    pub digest: String,
    pub order: usize,
}

impl TreeInfo {
    pub fn of(tree: &Tree) -> Self {
        TreeInfo {
            digest: format!("{:016x}", tree.digest()),
            order: tree.n(),
        }
    }
}

#[derive(Serialize)]
pub struct SuiteViolation {
    pub suite: String,
    pub tree: String,
    pub subtree: Option<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize)]
pub struct Report {
    pub tree: Option<TreeInfo>,
    pub command: String,
    pub results: BTreeMap<String, Value>,
    pub violations: Vec<SuiteViolation>,
}

impl Report {
    pub fn new(command: impl Into<String>, tree: Option<&Tree>) -> Self {
        Report {
            tree: tree.map(TreeInfo::of),
            command: command.into(),
            results: BTreeMap::new(),
            violations: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    pub fn set_str(&mut self, key: &str, value: impl Into<String>) {
        self.set(key, Value::String(value.into()));
    }

    pub fn absorb_suite(&mut self, suite: &SuiteReport) {
        for v in &suite.violations {
            self.violations.push(SuiteViolation {
                suite: suite.suite.clone(),
                tree: v.tree.clone(),
                subtree: v.subtree.clone(),
                expected: v.expected.clone(),
                actual: v.actual.clone(),
            });
        }
        self.set(
            &format!("suite:{}", suite.suite),
            json!({
                "passed": suite.passed(),
                "trees": suite.trees_checked,
                "checks": suite.checks,
                "violations": suite.violations.len(),
                "notes": suite.notes,
            }),
        );
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(t) = &self.tree {
            out.push_str(&format!("tree: order {} digest {}\n", t.order, t.digest));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {}\n", render_value(v)));
        }
        for v in &self.violations {
            out.push_str(&format!(
                "violation [{}] tree {}{}: expected {}, got {}\n",
                v.suite,
                v.tree,
                v.subtree
                    .as_deref()
                    .map(|s| format!(" subtree {s}"))
                    .unwrap_or_default(),
                v.expected,
                v.actual
            ));
        }
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("value renders"),
    }
}
