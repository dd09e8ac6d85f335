use crate::error::{Error, Result};
use crate::instance::{ElectionInstance, SeatAssignment};
use crate::limits::Limits;
use crate::quota::QuotaTable;
use crate::reachable::subset_with_sum;

use super::DpTarget;

/// Direct constructions for two-party instances.
///
/// * `WlqO` / `WuqO`: party 1 takes a seat subset worth exactly its
///   obtainable lower (upper) quota, party 2 takes the rest.
/// * `WlqX`: with `t` the first seat whose suffix `w_t + ... + w_k` exceeds
///   `q(1)`, party 1 takes seats `t+1..k` and party 2 the rest.
pub fn two_party_construct(instance: &ElectionInstance, target: DpTarget) -> Result<SeatAssignment> {
    if instance.num_parties() != 2 {
        return Err(Error::PartyCount {
            expected: 2,
            found: instance.num_parties(),
        });
    }
    let table = QuotaTable::new(instance)?;
    let k = instance.num_seats();
    let mut seats = vec![1usize; k];
    match target {
        DpTarget::WlqO | DpTarget::WuqO => {
            let (sum, cap) = if target == DpTarget::WlqO {
                (table.lower_obtainable[0], table.lower_seats[0] as usize)
            } else {
                (table.upper_obtainable[0], k)
            };
            let subset = subset_with_sum(instance, sum, cap, Limits::DEFAULT_MAX_TOTAL_WEIGHT)?
                .expect("obtainable quotas are reachable by definition");
            for t in subset {
                seats[t] = 0;
            }
        }
        DpTarget::WlqX => {
            let q = table.quotas[0];
            let mut suffix = 0u64;
            // Scan from the back; the last seat index where the suffix first
            // exceeds q while walking forward is the first such t overall.
            let mut first_exceeding = 0;
            for t in (0..k).rev() {
                suffix += instance.weight(t);
                if crate::fraction::Fraction::from(suffix) > q {
                    first_exceeding = t;
                    break;
                }
            }
            for seat in seats.iter_mut().skip(first_exceeding + 1) {
                *seat = 0;
            }
        }
    }
    SeatAssignment::new(instance, seats)
}
