//! Verification reports. Every suite returns one of these; they serialize to JSON
//! and render to a short text summary.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    /// Schwartz–Zippel bound for a single specialization point, when the check is probabilistic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>, n: usize) -> Self {
        Self {
            suite: suite.into(),
            n,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        instance: impl Into<String>,
        lhs: impl ToString,
        rhs: impl ToString,
        pass: bool,
    ) {
        self.checks.push(Check {
            instance: instance.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            failure_bound: None,
        });
    }

    pub fn push_bounded(
        &mut self,
        instance: impl Into<String>,
        lhs: impl ToString,
        rhs: impl ToString,
        pass: bool,
        bound: f64,
    ) {
        self.push(instance, lhs, rhs, pass);
        self.checks.last_mut().unwrap().failure_bound = Some(bound);
    }

    /// Records a check whose two sides are compared for equality.
    pub fn push_eq<T: PartialEq + ToString>(
        &mut self,
        instance: impl Into<String>,
        lhs: T,
        rhs: T,
    ) {
        let pass = lhs == rhs;
        self.push(instance, lhs.to_string(), rhs.to_string(), pass);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "[{}] {} n={}: {}/{} checks passed\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.n,
            ok,
            self.checks.len()
        );
        for note in &self.notes {
            let _ = writeln!(s, "  note: {note}");
        }
        for c in self.failures() {
            let _ = writeln!(s, "  failed: {}: {} != {}", c.instance, c.lhs, c.rhs);
        }
        s
    }
}
