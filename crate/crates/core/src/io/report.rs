//! Verification reports and their two renderings.

use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub subject: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub file: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Serialize)]
struct MachineRecord<'a> {
    file: &'a str,
    #[serde(flatten)]
    record: &'a CheckRecord,
}

#[derive(Serialize)]
struct MachineSummary<'a> {
    file: &'a str,
    total: usize,
    passed: usize,
    failed: usize,
}

impl VerificationReport {
    pub fn new(file: impl Into<String>) -> Self {
        VerificationReport { file: file.into(), records: vec![] }
    }

    pub fn push(&mut self, check: &str, subject: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            subject: subject.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        });
    }

    /// Records a comparison of two renderings; passes iff they are equal.
    pub fn compare(&mut self, check: &str, subject: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) {
        let (e, c) = (expected.into(), computed.into());
        let pass = e == c;
        self.push(check, subject, e, c, pass);
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// One line per check, then a summary line.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {} {} [{}]: expected {}, computed {}", self.file, r.check, r.subject, r.expected, r.computed);
        }
        let _ = writeln!(out, "{}: {} checks, {} passed, {} failed", self.file, self.records.len(), self.passed(), self.failed());
        out
    }

    /// Newline-delimited JSON: one object per check, then a summary object.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(&MachineRecord { file: &self.file, record: r }).expect("plain data"));
            out.push('\n');
        }
        let s = MachineSummary { file: &self.file, total: self.records.len(), passed: self.passed(), failed: self.failed() };
        out.push_str(&serde_json::to_string(&s).expect("plain data"));
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let mut r = VerificationReport::new("ex1");
        r.compare("gamma", "P t=inf", "0", "1");
        r.compare("fiber", "t=-2", "I2", "I2");
        assert_eq!(r.failed(), 1);
        let m = r.render_machine();
        let first: serde_json::Value = serde_json::from_str(m.lines().next().unwrap()).unwrap();
        assert_eq!(first["check"], "gamma");
        assert_eq!(first["pass"], false);
        assert!(m.lines().last().unwrap().contains("\"failed\":1"));
        assert!(r.render_human().starts_with("FAIL ex1 gamma [P t=inf]"));
    }
}
