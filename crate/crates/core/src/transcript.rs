//! Verification transcripts: every equation a construction checks at runtime
//! is tallied here, grouped by law.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Tags naming which part of the theory a checked law belongs to.
pub mod source {
    pub const MONOIDAL_CLOSED: &str = "monoidal-closed";
    pub const LIMITS: &str = "limits";
    pub const ENDS: &str = "ends";
    pub const EQUIVALENT_DIAGRAMS: &str = "equivalent-diagrams";
    pub const END_EXISTENCE: &str = "end-existence";
    pub const COLIMIT_SYNTHESIS: &str = "colimit-synthesis";
    pub const INITIAL_OBJECT: &str = "initial-object";
    pub const PLUMBING: &str = "plumbing";
}

/// One law, checked over `cases` instances; `witness` describes the first failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub source: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({}) {} case(s)", self.law, self.source, self.cases)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub checks: Vec<Check>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tallies one case of `law`. The witness is only rendered for the first failure.
    pub fn record(
        &mut self,
        law: &str,
        source: &str,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> bool {
        let entry = match self
            .checks
            .iter()
            .rposition(|c| c.law == law && c.source == source)
        {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(Check {
                    law: law.to_string(),
                    source: source.to_string(),
                    cases: 0,
                    failures: 0,
                    witness: None,
                });
                self.checks.last_mut().expect("just pushed")
            }
        };
        entry.cases += 1;
        if !ok {
            entry.failures += 1;
            if entry.witness.is_none() {
                entry.witness = Some(witness());
            }
        }
        ok
    }

    /// Records `left == right` as one case of `law`.
    pub fn equal<T: PartialEq + fmt::Debug>(
        &mut self,
        law: &str,
        source: &str,
        left: &T,
        right: &T,
        context: impl FnOnce() -> String,
    ) -> bool {
        let ok = left == right;
        self.record(law, source, ok, || format!("{}: {left:?} != {right:?}", context()))
    }

    pub fn extend(&mut self, other: Transcript) {
        for c in other.checks {
            match self
                .checks
                .iter_mut()
                .rfind(|x| x.law == c.law && x.source == c.source)
            {
                Some(x) => {
                    x.cases += c.cases;
                    x.failures += c.failures;
                    if x.witness.is_none() {
                        x.witness = c.witness;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn get(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}
