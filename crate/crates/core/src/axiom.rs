//! Report type shared by every axiom checker.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// How a verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceClass {
    /// Exact arithmetic over the whole finite domain that was checked.
    Exact,
    /// Finite samples, or comparisons that needed a float tolerance.
    Sampled,
    /// Known to hold for the built-in kind; the sampled check is informational.
    Analytic,
}

/// Named values that exhibit a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub values: Vec<(String, Scalar)>,
    pub detail: String,
}

impl Witness {
    pub fn new(values: Vec<(&str, Scalar)>, detail: impl Into<String>) -> Self {
        Self {
            values: values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            detail: detail.into(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.values.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} ({})", vals.join(", "), self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub evidence: EvidenceClass,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, axiom: &str, evidence: EvidenceClass, witness: Option<Witness>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            passed: witness.is_none(),
            evidence,
            witness,
            note: String::new(),
        });
    }

    pub fn push_note(&mut self, axiom: &str, evidence: EvidenceClass, witness: Option<Witness>, note: &str) {
        self.push(axiom, evidence, witness);
        if let Some(last) = self.checks.last_mut() {
            last.note = note.to_string();
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn passed(&self, axiom: &str) -> bool {
        self.check(axiom).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  [{status}] {} ({:?})", c.axiom, c.evidence)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            if !c.note.is_empty() {
                write!(f, " - {}", c.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
