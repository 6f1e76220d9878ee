//! Machine-readable verification reports. The JSON layout is documented in
//! `docs/report-schema.md`; bump [`SCHEMA_VERSION`] on any change to it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::word_algebra::ParamAssignment;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NotMember,
}

/// Outcome for one bigraded component of a difference series.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub row_content: Vec<usize>,
    pub col_content: Vec<usize>,
    pub basis_size: usize,
    /// Number of spanning vectors `u·g·v` generated.
    pub span_size: usize,
    /// Rank of the span, one entry per test point.
    pub span_rank: Vec<usize>,
    pub target_terms: usize,
    pub verdict: Verdict,
    /// Indices of test points at which the component is not in the span.
    pub failing_points: Vec<usize>,
    pub elapsed_us: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub command: Vec<String>,
    pub verification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
    pub test_points: Vec<BTreeMap<String, String>>,
    pub components: Vec<ComponentRecord>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub elapsed_us: u64,
}

impl VerificationReport {
    pub fn new(verification: &str, m: usize) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            engine_version: ENGINE_VERSION.to_string(),
            command: Vec::new(),
            verification: verification.to_string(),
            class: None,
            m,
            max_degree: None,
            parameters: BTreeMap::new(),
            test_points: Vec::new(),
            components: Vec::new(),
            checks: Vec::new(),
            passed: true,
            elapsed_us: 0,
        }
    }

    pub fn with_class(mut self, class: impl ToString) -> Self {
        self.class = Some(class.to_string());
        self
    }

    pub fn with_max_degree(mut self, n: usize) -> Self {
        self.max_degree = Some(n);
        self
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_test_points<S: Scalar>(mut self, points: &[ParamAssignment<S>]) -> Self {
        self.test_points = points.iter().map(ParamAssignment::to_strings).collect();
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(CheckRecord {
            name: name.into(),
            passed,
            detail,
        });
        self.passed &= passed;
    }

    pub fn extend_components(&mut self, records: impl IntoIterator<Item = ComponentRecord>) {
        for r in records {
            self.passed &= r.verdict == Verdict::Member;
            self.components.push(r);
        }
    }

    /// Appends another report's components and checks, prefixing check names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        self.extend_components(other.components);
        for c in other.checks {
            self.check(format!("{prefix}{}", c.name), c.passed, c.detail);
        }
        self.passed &= other.passed;
    }

    pub fn member_components(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.verdict == Verdict::Member)
            .count()
    }

    /// The report with timings and the command line cleared, for comparing
    /// outcomes of two runs.
    pub fn normalized(&self) -> VerificationReport {
        let mut r = self.clone();
        r.command.clear();
        r.elapsed_us = 0;
        for c in &mut r.components {
            c.elapsed_us = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_verdicts() {
        let mut r = VerificationReport::new("master", 2)
            .with_class("cartier-foata")
            .with_max_degree(3);
        r.extend_components([ComponentRecord {
            row_content: vec![1, 1],
            col_content: vec![1, 1],
            basis_size: 4,
            span_size: 2,
            span_rank: vec![1],
            target_terms: 2,
            verdict: Verdict::Member,
            failing_points: vec![],
            elapsed_us: 7,
        }]);
        assert!(r.passed);
        r.check("negative control", false, None);
        assert!(!r.passed);
        let json = r.to_json();
        assert!(json.contains("\"schema_version\": 1"));
        assert!(json.contains("\"member\""));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.normalized().components[0].elapsed_us, 0);
    }
}
