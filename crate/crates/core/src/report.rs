use std::fmt;

/// Outcome of a single named identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Where the check failed (basis index, axiom instance...). Empty on success.
    pub detail: String,
}

/// An ordered ledger of identity checks. Violations are data, not errors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            detail: String::new(),
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        });
    }

    /// Records `name` as passed when `ok`, otherwise as failed with the lazily built detail.
    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, detail())
        }
    }

    /// Records a family of instances under one name: a single pass entry when
    /// `failures` is empty, otherwise one failed entry per violated instance.
    pub fn family(&mut self, name: &str, failures: Vec<String>) {
        if failures.is_empty() {
            self.pass(name);
        } else {
            for detail in failures {
                self.fail(name, detail);
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn has_violation(&self, name_prefix: &str) -> bool {
        self.violations().any(|c| c.name.starts_with(name_prefix))
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.violations().count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed:", self.checks.len())?;
            for c in self.violations() {
                write!(f, " [{}: {}]", c.name, c.detail)?;
            }
            Ok(())
        }
    }
}
