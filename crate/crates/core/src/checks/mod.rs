// SPDX-License-Identifier: Apache-2.0

//! Verification suites.
//!
//! Every check carries both computed sides so a reader can redo the
//! comparison. `Proven` checks are theorems: a failure means a bug and is
//! surfaced as such. `Empirical` checks fix a constant the theory leaves open;
//! a failure there is a finding. `Report` checks only record a quantity.

mod family;
mod scan;
mod suite;

pub use family::family_suite;
pub use scan::{exhaustive_scan, extremal_search, search_suite, ExtremalRecord, ScanAggregate, ScanResult, Statistic};
pub use suite::{inequality_suite, SuiteConfig};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Proven,
    Empirical,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    HypothesisNotMet,
    Skipped,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    /// The inequality or identity being checked.
    pub statement: String,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub verdict: Verdict,
    pub witnesses: Value,
}

impl Check {
    pub(crate) fn new(name: impl Into<String>, kind: CheckKind, statement: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            kind,
            statement: statement.into(),
            inputs: Value::Null,
            lhs: Value::Null,
            rhs: Value::Null,
            verdict: Verdict::Skipped,
            witnesses: Value::Null,
        }
    }

    pub(crate) fn sides(mut self, lhs: impl Serialize, rhs: impl Serialize) -> Check {
        self.lhs = json!(lhs);
        self.rhs = json!(rhs);
        self
    }

    pub(crate) fn holds_if(mut self, ok: bool) -> Check {
        self.verdict = Verdict::from_bool(ok);
        self
    }

    pub(crate) fn verdict(mut self, v: Verdict) -> Check {
        self.verdict = v;
        self
    }

    pub(crate) fn inputs(mut self, v: Value) -> Check {
        self.inputs = v;
        self
    }

    pub(crate) fn witnesses(mut self, v: Value) -> Check {
        self.witnesses = v;
        self
    }

    pub(crate) fn skipped(mut self, reason: &str) -> Check {
        self.verdict = Verdict::Skipped;
        self.witnesses = json!({"reason": reason});
        self
    }

    pub fn is_proven_failure(&self) -> bool {
        self.kind == CheckKind::Proven && self.verdict == Verdict::Fails
    }

    pub fn is_finding(&self) -> bool {
        self.kind == CheckKind::Empirical && self.verdict == Verdict::Fails
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> CheckReport {
        CheckReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn proven_failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_proven_failure())
    }

    pub fn has_proven_failure(&self) -> bool {
        self.proven_failures().next().is_some()
    }

    pub fn findings(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_finding())
    }

    /// Number of checks per verdict.
    pub fn tally(&self) -> BTreeMap<Verdict, usize> {
        let mut t = BTreeMap::new();
        for c in &self.checks {
            *t.entry(c.verdict).or_default() += 1;
        }
        t
    }

    /// Turns a proven failure into an error carrying the full failing checks.
    pub fn ensure_proven(&self) -> Result<()> {
        let bad: Vec<&Check> = self.proven_failures().collect();
        if bad.is_empty() {
            return Ok(());
        }
        Err(Error::Verification(format!(
            "proven statement failed for {}: {}",
            self.subject,
            serde_json::to_string(&bad).unwrap_or_default()
        )))
    }

    pub fn to_json(&self) -> Value {
        json!(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let kind = match c.kind {
                CheckKind::Proven => "proven",
                CheckKind::Empirical => "empirical",
                CheckKind::Report => "report",
            };
            let _ = writeln!(
                out,
                "  {:<18} {:<9} {:<w$}  {}  [{} | {}]",
                c.verdict.name(),
                kind,
                c.name,
                c.statement,
                c.lhs,
                c.rhs,
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proven_failure_is_an_error() {
        let mut r = CheckReport::new("demo");
        r.push(Check::new("a", CheckKind::Empirical, "x ≤ y").sides(3, 2).holds_if(false));
        assert!(r.ensure_proven().is_ok());
        assert_eq!(r.findings().count(), 1);
        r.push(Check::new("b", CheckKind::Proven, "x ≤ y").sides(3, 2).holds_if(false));
        assert!(matches!(r.ensure_proven(), Err(Error::Verification(_))));
        assert_eq!(r.tally()[&Verdict::Fails], 2);
        assert!(r.to_text().contains("fails"));
    }
}
