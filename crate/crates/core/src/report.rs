//! Law-by-law verification reports. Failures are data, not errors.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub laws: Vec<LawResult>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), laws: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn extend(&mut self, other: Report) {
        self.laws.extend(other.laws);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for l in &self.laws {
            let status = if l.passed { "PASS" } else { "FAIL" };
            write!(f, "  [{status}] {} ({} checks)", l.law, l.checked)?;
            if let Some(w) = &l.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates checks of one law and keeps the first counterexample.
#[derive(Debug)]
pub struct LawCheck {
    name: String,
    checked: usize,
    witness: Option<String>,
}

impl LawCheck {
    pub fn new(name: impl Into<String>) -> Self {
        LawCheck { name: name.into(), checked: 0, witness: None }
    }

    /// Records one instance; `witness` is only rendered on the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> LawResult {
        LawResult { law: self.name, passed: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_is_kept() {
        let mut c = LawCheck::new("toy");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        let r = c.finish();
        assert!(!r.passed);
        assert_eq!(r.checked, 3);
        assert_eq!(r.witness.as_deref(), Some("first"));
        let mut rep = Report::new("s");
        rep.push(r);
        assert!(!rep.all_passed());
        assert!(rep.to_string().contains("[FAIL] toy"));
    }
}
