//! Verification outcomes and their text / JSON rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Stable dotted identifier, e.g. `spin7.l3.spectrum`.
    pub id: String,
    /// Number of the acceptance criterion the check belongs to.
    pub criterion: u8,
    /// Short statement of what is being checked.
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, criterion: u8, anchor: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { id: id.into(), criterion, anchor: anchor.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub suite: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl VerificationOutcome {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        Self { suite: suite.into(), checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: VerificationOutcome) {
        self.checks.extend(other.checks);
    }

    /// Checks of one criterion, in report order.
    pub fn criterion(&self, n: u8) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.criterion == n).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let failed = self.failures().count();
        serde_json::json!({
            "suite": self.suite,
            "pass": self.passed(),
            "total": self.checks.len(),
            "failed": failed,
            "checks": self.checks,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n",
            Format::Text => {
                let mut s = String::new();
                for c in &self.checks {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "[{status}] {:<34} {}: {status}", c.id, c.anchor);
                    if !c.detail.is_empty() {
                        let _ = writeln!(s, "       {}", c.detail);
                    }
                }
                let failed = self.failures().count();
                let _ = writeln!(
                    s,
                    "suite {}: {} checks, {} failed -> {}",
                    self.suite,
                    self.checks.len(),
                    failed,
                    if failed == 0 { "PASS" } else { "FAIL" }
                );
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let o = VerificationOutcome::new("none", vec![]);
        assert!(o.passed());
        assert!(o.render(Format::Text).contains("0 checks"));
    }

    #[test]
    fn failure_propagates() {
        let o = VerificationOutcome::new("x", vec![Check::new("a", 1, "a", true, ""), Check::new("b", 1, "b", false, "why")]);
        assert!(!o.passed());
        let json = o.to_json();
        assert_eq!(json["failed"], 1);
        assert_eq!(json["checks"][1]["detail"], "why");
        let back: Vec<Check> = serde_json::from_value(json["checks"].clone()).unwrap();
        assert_eq!(back, o.checks);
    }
}
