//! Election instances and seat assignments.
//!
//! Parties and seats are indexed from zero throughout the library. Documents,
//! the CLI and `Display` impls use one-based numbering.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A vote vector plus a non-increasing seat-weight vector.
#[derive(Debug, Clone, Eq, Serialize)]
pub struct ElectionInstance {
    votes: Vec<u64>,
    weights: Vec<u64>,
    total_votes: u64,
    total_weight: u64,
    #[serde(skip)]
    reordered: bool,
}

/// Equality ignores the reorder flag: two instances are the same election
/// whether or not the input weights arrived sorted.
impl PartialEq for ElectionInstance {
    fn eq(&self, other: &Self) -> bool {
        self.votes == other.votes && self.weights == other.weights
    }
}

impl ElectionInstance {
    /// Builds an instance, sorting the weights into non-increasing order.
    pub fn new(votes: Vec<u64>, weights: Vec<u64>) -> Result<Self> {
        if votes.is_empty() {
            return Err(Error::EmptyVotes);
        }
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(party) = votes.iter().position(|&v| v == 0) {
            return Err(Error::NonPositiveVote { party, value: 0 });
        }
        if let Some(seat) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight { seat, value: 0 });
        }
        let total_votes = checked_sum(&votes).ok_or(Error::Overflow("summing votes"))?;
        let total_weight = checked_sum(&weights).ok_or(Error::Overflow("summing weights"))?;
        // Keeps products like omega * v_p and k * v_p inside i128 with room to spare.
        if total_votes > i64::MAX as u64 || total_weight > i64::MAX as u64 {
            return Err(Error::Overflow("validating totals"));
        }

        let order = sort_permutation(&weights);
        let reordered = order.iter().enumerate().any(|(i, &j)| i != j);
        let weights = if reordered {
            order.iter().map(|&i| weights[i]).collect()
        } else {
            weights
        };

        Ok(ElectionInstance {
            votes,
            weights,
            total_votes,
            total_weight,
            reordered,
        })
    }

    pub fn votes(&self) -> &[u64] {
        &self.votes
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn vote(&self, party: usize) -> u64 {
        self.votes[party]
    }

    pub fn weight(&self, seat: usize) -> u64 {
        self.weights[seat]
    }

    /// `m`
    pub fn num_parties(&self) -> usize {
        self.votes.len()
    }

    /// `k`
    pub fn num_seats(&self) -> usize {
        self.weights.len()
    }

    /// `n`
    pub fn total_votes(&self) -> u64 {
        self.total_votes
    }

    /// `omega`
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn smallest_weight(&self) -> u64 {
        *self.weights.last().expect("instances have at least one seat")
    }

    /// Whether the input weights had to be sorted.
    pub fn was_reordered(&self) -> bool {
        self.reordered
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == self.weights[0])
    }

    pub fn parties(&self) -> std::ops::Range<usize> {
        0..self.num_parties()
    }

    pub fn check_party(&self, party: usize) -> Result<()> {
        if party < self.num_parties() {
            Ok(())
        } else {
            Err(Error::PartyOutOfRange {
                party,
                parties: self.num_parties(),
            })
        }
    }

    /// The instance with one extra seat of weight `extra`, inserted after any
    /// seats of equal weight. Returns the new seat's index alongside.
    pub fn with_extra_seat(&self, extra: u64) -> Result<(ElectionInstance, usize)> {
        if extra == 0 {
            return Err(Error::ZeroExtraWeight);
        }
        let position = self.weights.partition_point(|&w| w >= extra);
        let mut weights = self.weights.clone();
        weights.insert(position, extra);
        let instance = ElectionInstance::new(self.votes.clone(), weights)?;
        Ok((instance, position))
    }
}

/// Validates raw signed input and builds an [`ElectionInstance`].
///
/// Rejections name the first offending index.
pub fn validate_instance(raw_votes: &[i64], raw_weights: &[i64]) -> Result<ElectionInstance> {
    if raw_votes.is_empty() {
        return Err(Error::EmptyVotes);
    }
    if raw_weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if let Some((party, &value)) = raw_votes.iter().enumerate().find(|(_, &v)| v <= 0) {
        return Err(Error::NonPositiveVote { party, value });
    }
    if let Some((seat, &value)) = raw_weights.iter().enumerate().find(|(_, &w)| w <= 0) {
        return Err(Error::NonPositiveWeight { seat, value });
    }
    ElectionInstance::new(
        raw_votes.iter().map(|&v| v as u64).collect(),
        raw_weights.iter().map(|&w| w as u64).collect(),
    )
}

/// Stable permutation that sorts `weights` into non-increasing order:
/// entry `i` is the input index of the seat that ends up at position `i`.
pub fn sort_permutation(weights: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    order
}

fn checked_sum(values: &[u64]) -> Option<u64> {
    values.iter().try_fold(0u64, |acc, &x| acc.checked_add(x))
}

/// Seat-to-party map: entry `t` is the party holding seat `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeatAssignment(Vec<usize>);

impl SeatAssignment {
    /// Checks length and party range against `instance`.
    pub fn new(instance: &ElectionInstance, seats: Vec<usize>) -> Result<Self> {
        if seats.len() != instance.num_seats() {
            return Err(Error::AssignmentLength {
                expected: instance.num_seats(),
                found: seats.len(),
            });
        }
        if let Some((seat, &party)) = seats
            .iter()
            .enumerate()
            .find(|(_, &p)| p >= instance.num_parties())
        {
            return Err(Error::AssignedPartyOutOfRange {
                seat,
                party,
                parties: instance.num_parties(),
            });
        }
        Ok(SeatAssignment(seats))
    }

    /// Same as [`SeatAssignment::new`] but takes one-based party numbers.
    pub fn from_one_based(instance: &ElectionInstance, seats: &[usize]) -> Result<Self> {
        if let Some(seat) = seats.iter().position(|&p| p == 0) {
            return Err(Error::AssignedPartyOutOfRange {
                seat,
                party: usize::MAX,
                parties: instance.num_parties(),
            });
        }
        SeatAssignment::new(instance, seats.iter().map(|&p| p - 1).collect())
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_vec_unchecked(seats: Vec<usize>) -> Self {
        SeatAssignment(seats)
    }

    pub fn seats(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn party_of(&self, seat: usize) -> usize {
        self.0[seat]
    }

    /// Seats held by `party`, in increasing index order.
    pub fn seats_of(&self, party: usize) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p == party)
            .map(|(t, _)| t)
    }

    /// Representation of every party.
    pub fn representations(&self, instance: &ElectionInstance) -> Vec<u64> {
        representations_of(instance, &self.0)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

pub(crate) fn representations_of(instance: &ElectionInstance, seats: &[usize]) -> Vec<u64> {
    let mut reps = vec![0u64; instance.num_parties()];
    for (t, &p) in seats.iter().enumerate() {
        reps[p] += instance.weight(t);
    }
    reps
}

impl fmt::Display for SeatAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_totals() {
        let inst = validate_instance(&[60, 30, 10], &[10, 6, 4, 2]).unwrap();
        assert_eq!(inst.total_votes(), 100);
        assert_eq!(inst.total_weight(), 22);
        assert!(!inst.was_reordered());
    }

    #[test]
    fn single_party() {
        let inst = validate_instance(&[1], &[5]).unwrap();
        assert_eq!((inst.total_votes(), inst.total_weight()), (1, 5));
    }

    #[test]
    fn ascending_weights_are_sorted_and_flagged() {
        let inst = validate_instance(&[1, 1], &[1, 99]).unwrap();
        assert_eq!(inst.weights(), &[99, 1]);
        assert!(inst.was_reordered());
    }

    #[test]
    fn rejections_name_the_index() {
        assert_eq!(
            validate_instance(&[3, 0, 1], &[1]),
            Err(Error::NonPositiveVote { party: 1, value: 0 })
        );
        assert_eq!(
            validate_instance(&[3], &[2, -4]),
            Err(Error::NonPositiveWeight { seat: 1, value: -4 })
        );
        assert_eq!(validate_instance(&[], &[1]), Err(Error::EmptyVotes));
        assert_eq!(validate_instance(&[1], &[]), Err(Error::EmptyWeights));
        let msg = validate_instance(&[3, -2], &[1]).unwrap_err().to_string();
        assert!(msg.contains("party 2"), "{msg}");
    }

    #[test]
    fn extra_seat_goes_after_equal_weights() {
        let inst = validate_instance(&[1, 1], &[5, 3, 3, 1]).unwrap();
        let (aug, pos) = inst.with_extra_seat(3).unwrap();
        assert_eq!(aug.weights(), &[5, 3, 3, 3, 1]);
        assert_eq!(pos, 3);
        let (aug, pos) = inst.with_extra_seat(1).unwrap();
        assert_eq!(aug.weights(), &[5, 3, 3, 1, 1]);
        assert_eq!(pos, 4);
        assert_eq!(inst.with_extra_seat(0), Err(Error::ZeroExtraWeight));
    }

    #[test]
    fn assignment_validation() {
        let inst = validate_instance(&[1, 1], &[2, 1]).unwrap();
        assert!(SeatAssignment::new(&inst, vec![0]).is_err());
        assert!(SeatAssignment::new(&inst, vec![0, 2]).is_err());
        let s = SeatAssignment::from_one_based(&inst, &[2, 1]).unwrap();
        assert_eq!(s.seats(), &[1, 0]);
        assert_eq!(s.to_string(), "(2,1)");
        assert_eq!(s.representations(&inst), vec![1, 2]);
    }
}
