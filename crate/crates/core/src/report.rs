//! Structured outcomes of the verification operations.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Named sub-checks plus informational values (derived constants, factors).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub findings: Vec<Finding>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Records a sub-check. The witness closure only runs on failure.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) {
        let witness = (!passed).then(witness);
        self.findings.push(Finding { name: name.into(), passed, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.check(name, true, String::new);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        let w = witness.into();
        self.check(name, false, || w);
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl ToString) {
        self.info.insert(key.into(), value.to_string());
    }

    pub fn merge(&mut self, other: Report) {
        self.findings.extend(other.findings);
        self.info.extend(other.info);
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.passed)
    }

    /// First failing sub-check as `name: witness`.
    pub fn first_failure(&self) -> Option<String> {
        self.failures()
            .next()
            .map(|f| format!("{}: {}", f.name, f.witness.as_deref().unwrap_or("failed")))
    }
}
