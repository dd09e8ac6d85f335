use crate::axioms::{Axiom, AxiomChecker};
use crate::error::Result;
use crate::instance::{ElectionInstance, SeatAssignment};

use super::{SolveResult, SolveStatus};

/// Test on a zero-based seat vector.
pub type SeatTest<'a> = Box<dyn Fn(&[usize]) -> bool + Sync + 'a>;

/// What an enumerated assignment has to satisfy.
pub enum Predicate<'a> {
    /// Every listed axiom at once.
    Axioms(Vec<Axiom>),
    /// Arbitrary test on the zero-based seat vector.
    Custom(SeatTest<'a>),
}

impl From<Axiom> for Predicate<'_> {
    fn from(a: Axiom) -> Self {
        Predicate::Axioms(vec![a])
    }
}

/// Walks all `m^k` assignments in lexicographic order and returns the first
/// one satisfying `predicate`.
pub fn brute_force(
    instance: &ElectionInstance,
    predicate: &Predicate<'_>,
    max_assignments: u64,
) -> Result<SolveResult> {
    match predicate {
        Predicate::Axioms(axioms) => {
            let checker = AxiomChecker::new(instance)?;
            brute_force_with(instance, max_assignments, |s| checker.holds_all(s, axioms))
        }
        Predicate::Custom(f) => brute_force_with(instance, max_assignments, |s| f(s)),
    }
}

pub fn brute_force_with(
    instance: &ElectionInstance,
    max_assignments: u64,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Result<SolveResult> {
    let m = instance.num_parties();
    let k = instance.num_seats();
    let within_cap = u32::try_from(k)
        .ok()
        .and_then(|k| (m as u64).checked_pow(k))
        .is_some_and(|total| total <= max_assignments);
    if !within_cap {
        return Ok(SolveResult {
            status: SolveStatus::ResourceLimitExceeded,
            explored: 0,
        });
    }

    let mut seats = vec![0usize; k];
    let mut explored = 0u64;
    loop {
        explored += 1;
        if accept(&seats) {
            return Ok(SolveResult {
                status: SolveStatus::Found(SeatAssignment::from_vec_unchecked(seats)),
                explored,
            });
        }
        // Odometer step: the last seat varies fastest.
        let mut t = k;
        loop {
            if t == 0 {
                return Ok(SolveResult {
                    status: SolveStatus::NoneExists,
                    explored,
                });
            }
            t -= 1;
            seats[t] += 1;
            if seats[t] < m {
                break;
            }
            seats[t] = 0;
        }
    }
}
