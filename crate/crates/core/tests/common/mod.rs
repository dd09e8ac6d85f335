//! Reference implementations written straight from the definitions, with no
//! shared code beyond the instance type. Quotas are kept as the pair
//! `(omega * v_p, n)` and compared by cross-multiplication.

#![allow(dead_code)]

use proptest::prelude::*;
use seatweight::{Axiom, ElectionInstance};

pub fn instance(v: &[u64], w: &[u64]) -> ElectionInstance {
    ElectionInstance::new(v.to_vec(), w.to_vec()).unwrap()
}

pub fn reps(inst: &ElectionInstance, seats: &[usize]) -> Vec<u64> {
    let mut r = vec![0; inst.num_parties()];
    for (t, &p) in seats.iter().enumerate() {
        r[p] += inst.weight(t);
    }
    r
}

/// `rep * n` versus `omega * v_p`.
fn scaled(inst: &ElectionInstance, p: usize, rep: u64) -> (i128, i128) {
    (
        rep as i128 * inst.total_votes() as i128,
        inst.total_weight() as i128 * inst.vote(p) as i128,
    )
}

fn below(inst: &ElectionInstance, p: usize, rep: u64) -> bool {
    let (a, b) = scaled(inst, p, rep);
    a < b
}

fn above(inst: &ElectionInstance, p: usize, rep: u64) -> bool {
    let (a, b) = scaled(inst, p, rep);
    a > b
}

/// Sums of every subset of at most `cap` seats, by bitmask enumeration.
pub fn subset_sums(inst: &ElectionInstance, cap: usize) -> Vec<u64> {
    let k = inst.num_seats();
    assert!(k <= 20, "enumeration oracle is for small k");
    let mut sums: Vec<u64> = (0u32..1 << k)
        .filter(|mask| mask.count_ones() as usize <= cap)
        .map(|mask| (0..k).filter(|t| mask >> t & 1 == 1).map(|t| inst.weight(t)).sum())
        .collect();
    sums.sort();
    sums.dedup();
    sums
}

pub fn lower_seats(inst: &ElectionInstance, p: usize) -> usize {
    (inst.num_seats() as u128 * inst.vote(p) as u128 / inst.total_votes() as u128) as usize
}

pub fn obtainable_lower(inst: &ElectionInstance, p: usize) -> u64 {
    subset_sums(inst, lower_seats(inst, p))
        .into_iter()
        .filter(|&s| !above(inst, p, s))
        .max()
        .unwrap()
}

pub fn obtainable_upper(inst: &ElectionInstance, p: usize) -> u64 {
    subset_sums(inst, inst.num_seats())
        .into_iter()
        .find(|&s| !below(inst, p, s))
        .unwrap()
}

pub fn holds(inst: &ElectionInstance, seats: &[usize], axiom: Axiom) -> bool {
    let r = reps(inst, seats);
    let m = inst.num_parties();
    let held = |p: usize| (0..seats.len()).filter(move |&t| seats[t] == p);
    let unheld = |p: usize| (0..seats.len()).filter(move |&t| seats[t] != p);
    let w = |t: usize| inst.weight(t);
    let party_ok = |p: usize| -> bool {
        let rp = r[p];
        match axiom {
            Axiom::WlqO => rp >= obtainable_lower(inst, p),
            Axiom::WuqO => rp <= obtainable_upper(inst, p),
            Axiom::WlqX => !below(inst, p, rp) || unheld(p).all(|t| above(inst, p, rp + w(t))),
            Axiom::Wlq1 => !below(inst, p, rp) || unheld(p).any(|t| above(inst, p, rp + w(t))),
            Axiom::WlqXR => {
                !below(inst, p, rp)
                    || (0..seats.len())
                        .filter(|&t| seats[t] != p && above(inst, seats[t], r[seats[t]]))
                        .all(|t| above(inst, p, rp + w(t)))
            }
            Axiom::WuqX => !above(inst, p, rp) || held(p).all(|t| below(inst, p, rp - w(t))),
            Axiom::Wuq1 => !above(inst, p, rp) || held(p).any(|t| below(inst, p, rp - w(t))),
            Axiom::Wefx | Axiom::Wef1 | Axiom::Wwef1 => (0..m).filter(|&y| y != p).all(|y| {
                let (vx, vy) = (inst.vote(p) as i128, inst.vote(y) as i128);
                let (rx, ry) = (rp as i128, r[y] as i128);
                let removal = |t: usize| rx * vy >= (ry - w(t) as i128) * vx;
                let addition = |t: usize| (rx + w(t) as i128) * vy >= ry * vx;
                let mut seats_y = held(y).peekable();
                if seats_y.peek().is_none() {
                    return true;
                }
                match axiom {
                    Axiom::Wefx => seats_y.all(removal),
                    Axiom::Wef1 => seats_y.any(removal),
                    _ => seats_y.any(|t| removal(t) || addition(t)),
                }
            }),
        }
    };
    (0..m).all(party_ok)
}

/// `delta` as (numerator, denominator), unreduced.
pub fn delta(inst: &ElectionInstance, seats: &[usize]) -> (i128, i128) {
    let r = reps(inst, seats);
    let n = inst.total_votes() as i128;
    let num: i128 = (0..inst.num_parties())
        .map(|p| {
            let (a, b) = scaled(inst, p, r[p]);
            (a - b).abs()
        })
        .sum();
    (num, n * n)
}

pub fn count_assignments(inst: &ElectionInstance) -> u64 {
    (inst.num_parties() as u64).pow(inst.num_seats() as u32)
}

/// Every assignment, lexicographic with the last seat varying fastest.
pub fn all_assignments(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..(m as u64).pow(k as u32)).map(move |mut code| {
        let mut s = vec![0; k];
        for t in (0..k).rev() {
            s[t] = (code % m as u64) as usize;
            code /= m as u64;
        }
        s
    })
}

/// Instance with `m` in `parties`, `k` in `seats`, entries from `1..=max`.
pub fn instances(
    parties: std::ops::RangeInclusive<usize>,
    seats: std::ops::RangeInclusive<usize>,
    max_weight: u64,
    max_votes: u64,
) -> impl Strategy<Value = ElectionInstance> {
    (parties, seats).prop_flat_map(move |(m, k)| {
        (
            prop::collection::vec(1..=max_votes, m),
            prop::collection::vec(1..=max_weight, k),
        )
            .prop_map(|(v, w)| ElectionInstance::new(v, w).unwrap())
    })
}

/// Instance plus an arbitrary zero-based assignment for it.
pub fn instance_with_assignment(
    parties: std::ops::RangeInclusive<usize>,
    seats: std::ops::RangeInclusive<usize>,
    max_weight: u64,
    max_votes: u64,
) -> impl Strategy<Value = (ElectionInstance, Vec<usize>)> {
    instances(parties, seats, max_weight, max_votes).prop_flat_map(|inst| {
        let m = inst.num_parties();
        let k = inst.num_seats();
        (Just(inst), prop::collection::vec(0..m, k))
    })
}
