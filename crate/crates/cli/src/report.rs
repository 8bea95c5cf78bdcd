//! Certification reports: what was run, on what, what came out, and every
//! law checked along the way.

use std::fmt;

use catend::transcript::source;
use catend::{Check, Transcript};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSummary {
    pub kind: String,
    pub path: String,
    pub objects: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<usize>,
}

/// One named result, in the order the command produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub law: String,
    pub source: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Check> for Entry {
    fn from(c: &Check) -> Self {
        Entry {
            law: c.law.clone(),
            source: c.source.clone(),
            cases: c.cases,
            failures: c.failures,
            passed: c.passed(),
            witness: c.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    pub output: Vec<Output>,
    pub checks: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            instance: None,
            output: Vec::new(),
            checks: Vec::new(),
            elapsed_us: None,
            status: Status::Pass,
            exit_code: 0,
            first_failure: None,
        }
    }

    pub fn out(&mut self, key: &str, value: impl Into<String>) {
        self.output.push(Output { key: key.to_string(), value: value.into() });
    }

    pub fn transcript(&mut self, t: &Transcript) {
        self.checks.extend(t.checks.iter().map(Entry::from));
    }

    pub fn check(&mut self, law: &str, src: &str, ok: bool, witness: impl FnOnce() -> String) {
        let mut t = Transcript::new();
        t.record(law, src, ok, witness);
        self.transcript(&t);
    }

    /// Records a construction that stopped with an error as a failed check.
    pub fn error(&mut self, law: &str, src: &str, e: &catend::Error) {
        self.check(law, src, false, || e.to_string());
    }

    pub fn plumbing(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.check(law, source::PLUMBING, ok, witness);
    }

    /// Sets status, exit code and the first failing check from the entries.
    pub fn finish(&mut self) {
        let first = self.checks.iter().find(|e| !e.passed);
        self.first_failure = first.map(|e| e.law.clone());
        let ok = first.is_none() && !self.checks.is_empty();
        self.status = if ok { Status::Pass } else { Status::Fail };
        self.exit_code = if ok { 0 } else { 1 };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: catend {}", self.command.join(" "))?;
        if let Some(i) = &self.instance {
            write!(f, "instance: {} {} ({} objects", i.kind, i.path, i.objects)?;
            if let Some(a) = i.arrows {
                write!(f, ", {a} arrows")?;
            }
            writeln!(f, ")")?;
        }
        if !self.output.is_empty() {
            writeln!(f, "output:")?;
            for o in &self.output {
                writeln!(f, "  {}: {}", o.key, o.value)?;
            }
        }
        writeln!(f, "checks:")?;
        for e in &self.checks {
            let tag = if e.passed { "PASS" } else { "FAIL" };
            write!(f, "  [{tag}] {} ({}) {} case(s)", e.law, e.source, e.cases)?;
            if e.failures > 0 {
                write!(f, ", {} failure(s)", e.failures)?;
            }
            if let Some(w) = &e.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        if let Some(us) = self.elapsed_us {
            writeln!(f, "elapsed: {:.3} ms", us as f64 / 1000.0)?;
        }
        if let Some(law) = &self.first_failure {
            writeln!(f, "first failing check: {law}")?;
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        writeln!(f, "status: {status} (exit {})", self.exit_code)
    }
}
