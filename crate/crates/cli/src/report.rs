//! The report every command prints, as text or JSON.

use std::fmt;

use serde::Serialize;

use slackhopf_core::exactlin::TensorElement;
use slackhopf_core::ValidationReport;

use crate::format::TensorFile;

pub const SCHEMA: &str = "slackhopf-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    /// Tensor file text; reloads with [`TensorFile::parse`].
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: String,
    pub verdict: String,
    pub notes: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            input: input.to_string(),
            verdict: String::new(),
            notes: Vec::new(),
            certificates: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckEntry {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn ledger(&mut self, r: &ValidationReport) {
        for c in &r.checks {
            self.check(c.name.clone(), c.passed, c.detail.clone());
        }
    }

    pub fn certificate(&mut self, name: &str, file: TensorFile) {
        self.certificates.push(Certificate {
            name: name.to_string(),
            text: file.to_text(),
        });
    }

    pub fn tensor(&mut self, name: &str, t: &TensorElement) {
        self.certificate(name, TensorFile::from_tensor(t));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({})", self.command, self.schema)?;
        writeln!(f, "input: {}", self.input)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        if !self.checks.is_empty() {
            writeln!(f, "checks:")?;
            for c in &self.checks {
                if c.passed {
                    writeln!(f, "  [pass] {}", c.name)?;
                } else {
                    writeln!(f, "  [FAIL] {}: {}", c.name, c.detail)?;
                }
            }
        }
        for c in &self.certificates {
            writeln!(f, "certificate {}:", c.name)?;
            for line in c.text.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

/// `t` written with basis names, e.g. `1⊗g + 1/2*x⊗1`; `0` when zero.
pub fn show(t: &TensorElement, basis: &[String]) -> String {
    let terms: Vec<String> = t
        .terms()
        .map(|(idx, c)| {
            let word: Vec<&str> = idx.iter().map(|&i| basis[i].as_str()).collect();
            let word = word.join("⊗");
            let coef = c.to_string();
            if c.is_one() {
                word
            } else if coef == "-1" {
                format!("-{word}")
            } else {
                format!("{coef}*{word}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}
