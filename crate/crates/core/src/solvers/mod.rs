//! Existence deciders and constructors for assignments meeting the
//! obtainable quotas, plus an exhaustive oracle for small instances.

mod brute;
mod dp;
mod search;
mod two_party;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::axioms::Axiom;
use crate::instance::SeatAssignment;

pub use brute::{brute_force, brute_force_with, Predicate, SeatTest};
pub use dp::find_by_dp;
pub use search::{
    search_counterexample, Certificate, Claim, Counterexample, SearchConfig, SearchOutcome,
    SearchStrategy,
};
pub use two_party::two_party_construct;

/// Axioms the tuple DP can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DpTarget {
    WlqO,
    WlqX,
    WuqO,
}

impl DpTarget {
    pub const ALL: [DpTarget; 3] = [DpTarget::WlqO, DpTarget::WlqX, DpTarget::WuqO];

    pub fn axiom(self) -> Axiom {
        match self {
            DpTarget::WlqO => Axiom::WlqO,
            DpTarget::WlqX => Axiom::WlqX,
            DpTarget::WuqO => Axiom::WuqO,
        }
    }
}

impl FromStr for DpTarget {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Axiom>()? {
            Axiom::WlqO => Ok(DpTarget::WlqO),
            Axiom::WlqX => Ok(DpTarget::WlqX),
            Axiom::WuqO => Ok(DpTarget::WuqO),
            other => Err(format!("{other} is not a solver target (wlq-o, wlq-x, wuq-o)")),
        }
    }
}

impl fmt::Display for DpTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.axiom().fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Found(SeatAssignment),
    /// Returned only after the whole search space was covered.
    NoneExists,
    ResourceLimitExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// States (DP) or assignments (brute force) examined.
    pub explored: u64,
}

impl SolveResult {
    pub fn found(&self) -> Option<&SeatAssignment> {
        match &self.status {
            SolveStatus::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn exists(&self) -> Option<bool> {
        match self.status {
            SolveStatus::Found(_) => Some(true),
            SolveStatus::NoneExists => Some(false),
            SolveStatus::ResourceLimitExceeded => None,
        }
    }
}
