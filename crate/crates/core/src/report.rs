//! Outcome of a claim verification run.

use std::fmt;

use crate::filter::Filter;
use crate::universe::Menu;

/// How a verifier walks its search space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { count, seed } => write!(f, "sampled {count} seed {seed}"),
        }
    }
}

/// A concrete instance a verifier flagged.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub label: String,
    pub detail: String,
    pub filters: Vec<Filter>,
    pub menu: Option<Menu>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub claim: String,
    pub mode: Mode,
    /// Size of the universe the run used.
    pub universe_size: usize,
    /// Instances examined (filters, pairs, tuples or menus).
    pub checked: usize,
    /// Instances where the claim held.
    pub agreements: usize,
    pub counterexamples: Vec<Finding>,
    /// Unmet hypotheses. When nonempty the claim was not evaluated.
    pub preconditions_failed: Vec<String>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub(crate) fn new(claim: impl Into<String>, mode: Mode, universe_size: usize) -> Self {
        TheoremReport {
            claim: claim.into(),
            mode,
            universe_size,
            checked: 0,
            agreements: 0,
            counterexamples: Vec::new(),
            preconditions_failed: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.preconditions_failed.is_empty()
    }

    /// One line: claim, mode, size and counts.
    pub fn summary(&self) -> String {
        format!(
            "{} ({}, |X|={}): {} checked, {} agreed, {} finding(s)",
            self.claim,
            self.mode,
            self.universe_size,
            self.checked,
            self.agreements,
            self.counterexamples.len()
        )
    }

    pub(crate) fn tally(&mut self, agreed: bool) {
        self.checked += 1;
        if agreed {
            self.agreements += 1;
        }
    }
}
