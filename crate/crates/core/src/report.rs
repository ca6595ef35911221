//! Check records: one verdict per verified law, with a witness on failure.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

/// One verified law: a functional name, the statement of the law itself, and
/// a machine-checkable verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub law: String,
    pub verdict: CheckVerdict,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, law: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            verdict: CheckVerdict::Pass,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            verdict: CheckVerdict::Fail {
                witness: witness.into(),
            },
        }
    }

    pub fn skipped(
        name: impl Into<String>,
        law: impl Into<String>,
        reason: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            verdict: CheckVerdict::Skipped {
                reason: reason.into(),
            },
        }
    }

    /// Pass/fail from a brute-force witness search: `None` means the law held.
    pub fn from_witness(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: Option<String>,
    ) -> CheckRecord {
        match witness {
            None => CheckRecord::pass(name, law),
            Some(w) => CheckRecord::fail(name, law, w),
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.verdict, CheckVerdict::Fail { .. })
    }

    pub fn render_text(&self) -> String {
        match &self.verdict {
            CheckVerdict::Pass => format!("PASS  {}  [{}]", self.name, self.law),
            CheckVerdict::Fail { witness } => {
                format!("FAIL  {}  [{}]  witness: {}", self.name, self.law, witness)
            }
            CheckVerdict::Skipped { reason } => {
                format!("SKIP  {}  [{}]  ({})", self.name, self.law, reason)
            }
        }
    }
}

/// True when no record failed (skips do not count as failures).
pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.passed())
}
