use std::collections::HashMap;

use crate::error::Result;
use crate::fraction::Fraction;
use crate::instance::{ElectionInstance, SeatAssignment};
use crate::limits::Limits;
use crate::quota::QuotaTable;

use super::{DpTarget, SolveResult, SolveStatus};

struct Layer {
    states: Vec<Box<[u64]>>,
    // (index into the previous layer, party that took this layer's seat)
    back: Vec<(u32, u32)>,
}

/// Decides whether an assignment meeting `target` exists by sweeping seats
/// in order and keeping every distinct tuple of per-party weight sums.
///
/// For `WlqX` each tuple also carries, per party, the weight of the most
/// recent seat the party did not take. Seats arrive heaviest first, so that
/// is the lightest seat outside its bundle, and the final screen
/// `W_p + lightest_unheld_p > q(p)` is exact.
pub fn find_by_dp(
    instance: &ElectionInstance,
    target: DpTarget,
    limits: &Limits,
) -> Result<SolveResult> {
    let table = match QuotaTable::with_limit(instance, limits.max_total_weight) {
        Ok(t) => t,
        Err(e) if e.is_resource_limit() => {
            return Ok(SolveResult {
                status: SolveStatus::ResourceLimitExceeded,
                explored: 0,
            })
        }
        Err(e) => return Err(e),
    };

    let m = instance.num_parties();
    let width = if target == DpTarget::WlqX { 2 * m } else { m };
    let mut remaining: u64 = instance.total_weight();
    let mut layers = vec![Layer {
        states: vec![vec![0u64; width].into_boxed_slice()],
        back: vec![(0, 0)],
    }];
    let mut explored: u64 = 1;

    for &w in instance.weights() {
        remaining -= w;
        let prev = layers.last().expect("seeded with the empty layer");
        let mut index: HashMap<Box<[u64]>, u32> = HashMap::new();
        let mut next = Layer {
            states: Vec::new(),
            back: Vec::new(),
        };
        for (i, state) in prev.states.iter().enumerate() {
            for p in 0..m {
                let mut s = state.clone();
                s[p] += w;
                if target == DpTarget::WlqX {
                    for o in (0..m).filter(|&o| o != p) {
                        s[m + o] = w;
                    }
                }
                if !viable(&s, target, &table, remaining) {
                    continue;
                }
                if index.contains_key(&s) {
                    continue;
                }
                if explored as usize >= limits.dp_states {
                    return Ok(SolveResult {
                        status: SolveStatus::ResourceLimitExceeded,
                        explored,
                    });
                }
                explored += 1;
                index.insert(s.clone(), next.states.len() as u32);
                next.states.push(s);
                next.back.push((i as u32, p as u32));
            }
        }
        layers.push(next);
    }

    let last = layers.last().expect("non-empty");
    let Some(hit) = last
        .states
        .iter()
        .position(|s| accepts(s, target, &table, m))
    else {
        return Ok(SolveResult {
            status: SolveStatus::NoneExists,
            explored,
        });
    };

    let k = instance.num_seats();
    let mut seats = vec![0usize; k];
    let mut at = hit;
    for t in (0..k).rev() {
        let (prev, party) = layers[t + 1].back[at];
        seats[t] = party as usize;
        at = prev as usize;
    }
    Ok(SolveResult {
        status: SolveStatus::Found(SeatAssignment::from_vec_unchecked(seats)),
        explored,
    })
}

/// Prunes partial tuples that can no longer meet the target. Both rules are
/// necessary conditions, so no completable tuple is dropped.
fn viable(state: &[u64], target: DpTarget, table: &QuotaTable, remaining: u64) -> bool {
    match target {
        DpTarget::WuqO => state
            .iter()
            .zip(&table.upper_obtainable)
            .all(|(&got, &bound)| got <= bound),
        DpTarget::WlqO => {
            let deficit: u64 = state
                .iter()
                .zip(&table.lower_obtainable)
                .map(|(&got, &bound)| bound.saturating_sub(got))
                .sum();
            deficit <= remaining
        }
        DpTarget::WlqX => true,
    }
}

fn accepts(state: &[u64], target: DpTarget, table: &QuotaTable, m: usize) -> bool {
    match target {
        DpTarget::WlqO => (0..m).all(|p| state[p] >= table.lower_obtainable[p]),
        DpTarget::WuqO => (0..m).all(|p| state[p] <= table.upper_obtainable[p]),
        DpTarget::WlqX => (0..m).all(|p| {
            let got = Fraction::from(state[p]);
            let q = table.quotas[p];
            // A zero lightest-unheld weight means the party holds every seat,
            // which puts it at omega >= q.
            got >= q || Fraction::from(state[p] + state[m + p]) > q
        }),
    }
}
