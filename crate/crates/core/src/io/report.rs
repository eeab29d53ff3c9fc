use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::check::Outcome;

pub const REPORT_SCHEMA: &str = "kzero-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    /// Builder name with `g`, or the file path the model came from.
    pub source: String,
    pub g: usize,
    pub dim: usize,
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub order: usize,
    pub seed: u64,
    pub max_rounds: usize,
}

/// One checked statement. `id` is stable across releases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub id: String,
    pub statement: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl SuiteEntry {
    pub fn new(id: &str, statement: &str, outcome: impl Into<Outcome>) -> Self {
        SuiteEntry {
            id: id.to_string(),
            statement: statement.to_string(),
            outcome: outcome.into(),
        }
    }
}

/// A self-describing verification document. Results keep suite order and
/// timings are only present when asked for, so the default output is
/// byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub command: String,
    pub model: ModelSummary,
    pub config: ReportConfig,
    pub results: Vec<SuiteEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn new(command: &str, model: ModelSummary, config: ReportConfig) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            command: command.to_string(),
            model,
            config,
            results: Vec::new(),
            details: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|e| !e.outcome.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.results.iter().filter(|e| e.outcome.is_fail())
    }

    pub fn entry(&self, id: &str) -> Option<&SuiteEntry> {
        self.results.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = if self.model.fingerprint.is_empty() {
            format!("{}\n", self.command)
        } else {
            format!(
                "{} on {} (g = {}, dim = {}, sha256 {})\n",
                self.command,
                self.model.source,
                self.model.g,
                self.model.dim,
                &self.model.fingerprint[..self.model.fingerprint.len().min(12)]
            )
        };
        let width = self.results.iter().map(|e| e.id.len()).max().unwrap_or(0);
        for e in &self.results {
            let (tag, note) = match &e.outcome {
                Outcome::Pass => ("PASS", String::new()),
                Outcome::Fail { witness } => ("FAIL", format!("  witness: {witness}")),
                Outcome::Skipped { reason } => ("SKIP", format!("  reason: {reason}")),
            };
            out.push_str(&format!("{tag} {:width$}  {}{note}\n", e.id, e.statement));
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {fails} failed\n", self.results.len()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new(
            "verify",
            ModelSummary {
                source: "theta(2)".into(),
                g: 2,
                dim: 3,
                fingerprint: "ab".repeat(32),
            },
            ReportConfig {
                order: 6,
                seed: 0,
                max_rounds: 8,
            },
        );
        r.results
            .push(SuiteEntry::new("thm-fm-iso", "fm∘fm", Outcome::Pass));
        r.results.push(SuiteEntry::new(
            "x",
            "y",
            Outcome::Fail {
                witness: "e1".into(),
            },
        ));
        r.results
            .push(SuiteEntry::new("z", "w", Outcome::skipped("no")));
        r
    }

    #[test]
    fn json_round_trips() {
        let mut r = sample();
        let s = r.to_json();
        assert!(s.contains("\"schema\": \"kzero-report/1\""));
        assert!(!s.contains("timings"));
        assert_eq!(VerificationReport::from_json(&s).unwrap(), r);
        r.timings_ms = Some(BTreeMap::from([("all".to_string(), 1.25)]));
        assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn verdicts() {
        let r = sample();
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
        let text = r.to_text();
        assert!(text.contains("FAIL x"));
        assert!(text.contains("witness: e1"));
        assert!(text.ends_with("3 checks, 1 failed\n"));
    }
}
