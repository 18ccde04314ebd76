//! Verification reports: named checks with pass/fail status and symbolic witnesses.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// Descriptive tag of the identity being checked.
    pub anchor: String,
    pub status: Status,
    /// Number of instances evaluated.
    pub instances: usize,
    /// Inputs and nonzero residual of the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            status: Status::Pass,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn push(&mut self, check: Check) {
        if check.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Record a check from its instance count and first failure, if any.
    pub fn record(&mut self, id: &str, anchor: &str, instances: usize, failure: Option<String>) {
        self.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: if failure.is_some() { Status::Fail } else { Status::Pass },
            instances,
            witness: failure,
        });
    }

    /// Start a tally for a check evaluated over many instances.
    pub fn tally<'a>(&'a mut self, id: &str, anchor: &str) -> Tally<'a> {
        Tally {
            report: self,
            id: id.to_string(),
            anchor: anchor.to_string(),
            instances: 0,
            failure: None,
        }
    }

    /// Append every check of `other`, prefixing ids with its suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    /// Fold `other` in, summing instances of equal ids (prefixed by its suite name); the first
    /// failure is kept with `context` in front of its witness.
    pub fn merge(&mut self, other: VerificationReport, context: &str) {
        for c in other.checks {
            let id = format!("{}/{}", other.suite, c.id);
            let witness = c.witness.map(|w| format!("{context}: {w}"));
            if c.status == Status::Fail {
                self.status = Status::Fail;
            }
            match self.checks.iter_mut().find(|x| x.id == id) {
                Some(x) => {
                    x.instances += c.instances;
                    if x.witness.is_none() {
                        x.witness = witness;
                    }
                    if c.status == Status::Fail {
                        x.status = Status::Fail;
                    }
                }
                None => self.checks.push(Check { id, witness, ..c }),
            }
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {}", self.suite);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {} {} instances={} anchor=\"{}\"",
                c.id,
                c.status.as_str(),
                c.instances,
                c.anchor
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "  witness {w}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(
            out,
            "status {} ({passed}/{} checks passed)",
            self.status.as_str(),
            self.checks.len()
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates instances of one check; keeps the first failure.
pub struct Tally<'a> {
    report: &'a mut VerificationReport,
    id: String,
    anchor: String,
    instances: usize,
    failure: Option<String>,
}

impl Tally<'_> {
    pub fn ok(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    /// Count one instance; `witness` is only built on failure.
    pub fn expect(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        if holds {
            self.ok()
        } else {
            self.fail(witness)
        }
    }

    pub fn has_failed(&self) -> bool {
        self.failure.is_some()
    }
}

impl Drop for Tally<'_> {
    fn drop(&mut self) {
        let failure = self.failure.take();
        let (id, anchor) = (std::mem::take(&mut self.id), std::mem::take(&mut self.anchor));
        self.report.record(&id, &anchor, self.instances, failure);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = VerificationReport::new("demo");
        {
            let mut t = r.tally("a", "first");
            t.ok();
            t.ok();
        }
        assert!(r.passed());
        {
            let mut t = r.tally("b", "second");
            t.fail(|| "x = 1".into());
            t.fail(|| unreachable!());
        }
        assert!(!r.passed());
        assert_eq!(r.check("b").unwrap().instances, 2);
        assert_eq!(r.check("b").unwrap().witness.as_deref(), Some("x = 1"));
        let text = r.to_text();
        assert!(text.contains("check a pass instances=2"));
        assert!(text.ends_with("status fail (1/2 checks passed)\n"));
        assert!(r.to_json().contains("\"status\": \"fail\""));
    }
}
