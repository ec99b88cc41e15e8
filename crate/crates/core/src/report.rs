use std::fmt;

use serde::Serialize;

/// Outcome of one axiom check. Failures carry the first violating index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Pass/fail per axiom for one object. Validators never fail with an error;
/// violations are entries here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }

    pub fn pass(&mut self, axiom: &str) {
        self.checks.push(Check { axiom: axiom.to_string(), passed: true, witness: None, detail: None });
    }

    pub fn fail(&mut self, axiom: &str, witness: Vec<usize>, detail: impl Into<String>) {
        self.checks.push(Check {
            axiom: axiom.to_string(),
            passed: false,
            witness: Some(witness),
            detail: Some(detail.into()),
        });
    }

    /// Records `axiom` as passed when `first_failure` is `None`.
    pub fn record(&mut self, axiom: &str, first_failure: Option<(Vec<usize>, String)>) {
        match first_failure {
            None => self.pass(axiom),
            Some((witness, detail)) => self.fail(axiom, witness, detail),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, if self.passed() { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            write!(f, "\n  {:<28} {}", c.axiom, if c.passed { "ok" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " at {w:?}")?;
            }
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
        }
        Ok(())
    }
}
