//! Quotas, representation and the obtainable quota bounds.

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::instance::{ElectionInstance, SeatAssignment};
use crate::limits::Limits;
use crate::reachable::reachable_weights_with_limit;

/// `omega * v_p / n`
pub fn quota(instance: &ElectionInstance, party: usize) -> Result<Fraction> {
    instance.check_party(party)?;
    Ok(quota_unchecked(instance, party))
}

pub(crate) fn quota_unchecked(instance: &ElectionInstance, party: usize) -> Fraction {
    Fraction::new(
        instance.total_weight() as i128 * instance.vote(party) as i128,
        instance.total_votes() as i128,
    )
}

/// Total weight of the seats `party` holds.
pub fn representation(
    instance: &ElectionInstance,
    assignment: &SeatAssignment,
    party: usize,
) -> Result<u64> {
    instance.check_party(party)?;
    check_length(instance, assignment)?;
    Ok(assignment
        .seats_of(party)
        .map(|t| instance.weight(t))
        .sum())
}

pub(crate) fn check_length(instance: &ElectionInstance, assignment: &SeatAssignment) -> Result<()> {
    if assignment.len() != instance.num_seats() {
        return Err(Error::AssignmentLength {
            expected: instance.num_seats(),
            found: assignment.len(),
        });
    }
    Ok(())
}

/// Number of seats the party deserves: `floor(k * v_p / n)`.
pub fn lower_quota_seats(instance: &ElectionInstance, party: usize) -> Result<u64> {
    instance.check_party(party)?;
    Ok(lower_seats_unchecked(instance, party))
}

fn lower_seats_unchecked(instance: &ElectionInstance, party: usize) -> u64 {
    let k = instance.num_seats() as u128;
    (k * instance.vote(party) as u128 / instance.total_votes() as u128) as u64
}

/// Largest sum reachable with at most `lower_quota_seats` seats that does not
/// exceed the quota.
pub fn obtainable_lower_quota(instance: &ElectionInstance, party: usize) -> Result<u64> {
    instance.check_party(party)?;
    Ok(QuotaTable::new(instance)?.lower_obtainable[party])
}

/// Smallest sum reachable with any number of seats that is at least the quota.
pub fn obtainable_upper_quota(instance: &ElectionInstance, party: usize) -> Result<u64> {
    instance.check_party(party)?;
    Ok(QuotaTable::new(instance)?.upper_obtainable[party])
}

/// Per-party quota values computed once per instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotaTable {
    pub quotas: Vec<Fraction>,
    pub lower_seats: Vec<u64>,
    pub lower_obtainable: Vec<u64>,
    pub upper_obtainable: Vec<u64>,
}

impl QuotaTable {
    pub fn new(instance: &ElectionInstance) -> Result<Self> {
        Self::with_limit(instance, Limits::DEFAULT_MAX_TOTAL_WEIGHT)
    }

    pub fn with_limit(instance: &ElectionInstance, max_total_weight: u64) -> Result<Self> {
        let all = reachable_weights_with_limit(instance, instance.num_seats(), max_total_weight)?;
        let quotas: Vec<Fraction> = instance
            .parties()
            .map(|p| quota_unchecked(instance, p))
            .collect();
        let lower_seats: Vec<u64> = instance
            .parties()
            .map(|p| lower_seats_unchecked(instance, p))
            .collect();
        let lower_obtainable = instance
            .parties()
            .map(|p| all.with_cap(lower_seats[p] as usize).largest_at_most(quotas[p]))
            .collect();
        let upper_obtainable = instance
            .parties()
            .map(|p| {
                all.smallest_at_least(quotas[p])
                    .expect("omega is reachable and bounds every quota")
            })
            .collect();
        Ok(QuotaTable {
            quotas,
            lower_seats,
            lower_obtainable,
            upper_obtainable,
        })
    }
}
