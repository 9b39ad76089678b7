use std::fmt;

use serde::Serialize;

/// Outcome of an exhaustive verification sweep.
///
/// Failures are collected, not raised; at most [`VerificationReport::MAX_WITNESSES`]
/// witnesses are kept but every failure is counted.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub const MAX_WITNESSES: usize = 8;

    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one check; `witness` is only evaluated when the check failed.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < Self::MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() < Self::MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks", self.name, self.checked)?;
        if self.failures > 0 {
            write!(f, ", {} failures", self.failures)?;
        }
        write!(f, ")")?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}
