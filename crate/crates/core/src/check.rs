use serde::{Deserialize, Serialize};

/// Outcome of one exact identity check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check {
            passed: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass()
        } else {
            Check::fail(witness())
        }
    }

    /// First failure among `checks`, or a pass.
    pub fn all(checks: impl IntoIterator<Item = Check>) -> Self {
        checks
            .into_iter()
            .find(|c| !c.passed)
            .unwrap_or_else(Check::pass)
    }
}

/// Suite-level verdict: a check can also be skipped with a stated reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Outcome::Skipped {
            reason: reason.into(),
        }
    }
}

impl From<Check> for Outcome {
    fn from(c: Check) -> Self {
        if c.passed {
            Outcome::Pass
        } else {
            Outcome::Fail {
                witness: c.witness.unwrap_or_default(),
            }
        }
    }
}
