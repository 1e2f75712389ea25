//! Witness-carrying validation reports.

use std::fmt;

use serde::Serialize;

/// One failed condition, named, with the indices that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: &'static str,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a failure. Only the first witness of each condition is kept.
    pub fn fail(&mut self, condition: &'static str, witness: impl Into<Vec<usize>>) {
        if !self.has(condition) {
            self.violations.push(Violation { condition, witness: witness.into() });
        }
    }

    /// Records a failure only if `ok` is false.
    pub fn check(&mut self, ok: bool, condition: &'static str, witness: impl Into<Vec<usize>>) {
        if !ok {
            self.fail(condition, witness);
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: &str) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    pub fn first(&self, condition: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} at {:?}", v.condition, v.witness)?;
        }
        Ok(())
    }
}
