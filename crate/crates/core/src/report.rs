use std::fmt;

use serde::Serialize;

use crate::Element;

/// One violated axiom together with the lowest witness tuple found for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub witness: Vec<Element>,
}

/// Outcome of an axiom check. `passed` is true exactly when no failure was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    passed: bool,
    sampled: bool,
    failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn pass() -> Self {
        VerificationReport {
            passed: true,
            sampled: false,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    /// True when at least one of the underlying scans was sampled instead of exhaustive.
    pub fn sampled(&self) -> bool {
        self.sampled
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: Vec<Element>) {
        self.failures.push(Failure {
            axiom: axiom.into(),
            witness,
        });
        self.passed = false;
    }

    pub fn mark_sampled(&mut self) {
        self.sampled = true;
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.sampled |= other.sampled;
        for f in other.failures {
            self.fail(f.axiom, f.witness);
        }
    }

    pub fn has_failure(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::pass()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "passed{}", if self.sampled { " (sampled)" } else { "" });
        }
        write!(f, "failed:")?;
        for fail in &self.failures {
            write!(f, " {} at {:?};", fail.axiom, fail.witness)?;
        }
        Ok(())
    }
}
