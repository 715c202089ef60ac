//! Pass/fail bookkeeping shared by every checker.

use serde::{Deserialize, Serialize};

/// Outcome of one universally quantified check over a finite sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub failures: usize,
    /// Description of the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            checked: 0,
            failures: 0,
            witness: None,
        }
    }

    /// Records one instance; `witness` is only evaluated on the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// A check that failed before any instance could be examined.
    pub fn failed(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            checked: 0,
            failures: 1,
            witness: Some(why.into()),
        }
    }

    /// A single boolean assertion.
    pub fn single(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        let mut c = Check::new(name);
        c.record(ok, witness);
        c
    }

    /// Folds another run of the same check into this one.
    pub fn absorb(&mut self, other: Check) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.passed &= other.passed;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
