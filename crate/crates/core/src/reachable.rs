//! Weight sums reachable with a bounded number of seats.
//!
//! One pass of a 0/1 subset-sum DP records, for every sum up to `omega`, the
//! fewest seats that reach it. A sum is reachable with at most `h` seats iff
//! that minimum is `<= h`, so every cap is answered from the same table.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::instance::ElectionInstance;
use crate::limits::Limits;

const UNREACHABLE: u32 = u32::MAX;

/// The family of weight sums obtainable with at most `cap` seats.
#[derive(Debug, Clone)]
pub struct ReachableSet {
    cap: usize,
    min_cardinality: Arc<Vec<u32>>,
}

impl ReachableSet {
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest representable sum, i.e. `omega`.
    pub fn total(&self) -> u64 {
        (self.min_cardinality.len() - 1) as u64
    }

    pub fn contains(&self, sum: u64) -> bool {
        self.min_cardinality(sum).is_some()
    }

    /// Fewest seats realising `sum`, if it is reachable within the cap.
    pub fn min_cardinality(&self, sum: u64) -> Option<usize> {
        let c = *self.min_cardinality.get(usize::try_from(sum).ok()?)?;
        (c != UNREACHABLE && c as usize <= self.cap).then_some(c as usize)
    }

    /// Reachable sums in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let cap = self.cap;
        self.min_cardinality
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c != UNREACHABLE && c as usize <= cap)
            .map(|(s, _)| s as u64)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same table, different cap.
    pub fn with_cap(&self, cap: usize) -> ReachableSet {
        ReachableSet {
            cap,
            min_cardinality: Arc::clone(&self.min_cardinality),
        }
    }

    /// Largest reachable sum `<= bound`. Always defined because 0 is reachable.
    pub fn largest_at_most(&self, bound: Fraction) -> u64 {
        if bound.is_negative() {
            return 0;
        }
        let start = bound.floor().min(self.total() as i128) as u64;
        (0..=start).rev().find(|&s| self.contains(s)).unwrap_or(0)
    }

    /// Smallest reachable sum `>= bound`, if any.
    pub fn smallest_at_least(&self, bound: Fraction) -> Option<u64> {
        let start = bound.ceil().max(0);
        if start > self.total() as i128 {
            return None;
        }
        (start as u64..=self.total()).find(|&s| self.contains(s))
    }
}

/// All sums of at most `cap` seat weights.
pub fn reachable_weights(instance: &ElectionInstance, cap: usize) -> Result<ReachableSet> {
    reachable_weights_with_limit(instance, cap, Limits::DEFAULT_MAX_TOTAL_WEIGHT)
}

pub fn reachable_weights_with_limit(
    instance: &ElectionInstance,
    cap: usize,
    max_total_weight: u64,
) -> Result<ReachableSet> {
    if cap > instance.num_seats() {
        return Err(Error::CapOutOfRange {
            cap,
            seats: instance.num_seats(),
        });
    }
    let table = min_cardinality_table(instance, max_total_weight)?;
    Ok(ReachableSet {
        cap,
        min_cardinality: Arc::new(table),
    })
}

fn guard_total(instance: &ElectionInstance, max_total_weight: u64) -> Result<usize> {
    let omega = instance.total_weight();
    if omega > max_total_weight {
        return Err(Error::ResourceLimit(format!(
            "total weight {omega} exceeds the subset-sum limit {max_total_weight}"
        )));
    }
    Ok(omega as usize)
}

fn min_cardinality_table(instance: &ElectionInstance, max_total_weight: u64) -> Result<Vec<u32>> {
    let omega = guard_total(instance, max_total_weight)?;
    let mut best = vec![UNREACHABLE; omega + 1];
    best[0] = 0;
    let mut reach = 0usize;
    for &w in instance.weights() {
        let w = w as usize;
        reach += w;
        for s in (w..=reach).rev() {
            let prev = best[s - w];
            if prev != UNREACHABLE && prev + 1 < best[s] {
                best[s] = prev + 1;
            }
        }
    }
    Ok(best)
}

/// Seat indices of a subset with total weight `target` using at most `cap`
/// seats, or `None` if no such subset exists.
pub fn subset_with_sum(
    instance: &ElectionInstance,
    target: u64,
    cap: usize,
    max_total_weight: u64,
) -> Result<Option<Vec<usize>>> {
    let omega = guard_total(instance, max_total_weight)?;
    if target as usize > omega {
        return Ok(None);
    }
    let k = instance.num_seats();
    let width = omega + 1;
    let bits = k
        .checked_mul(width)
        .filter(|&b| b <= 1 << 33)
        .ok_or_else(|| Error::ResourceLimit(format!("witness table for {k} seats x {width} sums")))?;

    // taken[t * width + s]: stage t improved sum s by using seat t.
    let mut taken = vec![0u64; bits.div_ceil(64)];
    let mut best = vec![UNREACHABLE; width];
    best[0] = 0;
    let mut reach = 0usize;
    for (t, &w) in instance.weights().iter().enumerate() {
        let w = w as usize;
        reach += w;
        for s in (w..=reach).rev() {
            let prev = best[s - w];
            if prev != UNREACHABLE && prev + 1 < best[s] {
                best[s] = prev + 1;
                let bit = t * width + s;
                taken[bit / 64] |= 1 << (bit % 64);
            }
        }
    }

    let target = target as usize;
    if best[target] == UNREACHABLE || best[target] as usize > cap {
        return Ok(None);
    }
    let mut seats = Vec::new();
    let mut s = target;
    for t in (0..k).rev() {
        if s == 0 {
            break;
        }
        let bit = t * width + s;
        if taken[bit / 64] >> (bit % 64) & 1 == 1 {
            seats.push(t);
            s -= instance.weight(t) as usize;
        }
    }
    debug_assert_eq!(s, 0);
    seats.reverse();
    Ok(Some(seats))
}
