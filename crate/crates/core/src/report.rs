//! Named pass/fail checks collected by the verification suites.

use std::fmt;

use serde::Serialize;

/// Outcome of one named check in a property suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub violations: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Results of a property suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub subject: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "  [{status}] {} ({} cases)", c.name, c.cases)?;
            for v in &c.violations {
                writeln!(f, "      {v}")?;
            }
        }
        Ok(())
    }
}
