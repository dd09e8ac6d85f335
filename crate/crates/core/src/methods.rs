//! Weighted-seat assignment methods and their unit-count counterparts.
//!
//! All methods fill seats in index order, i.e. from the heaviest seat down.
//! Ties are resolved by a [`TieBreak`] policy so every run is reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::instance::{ElectionInstance, SeatAssignment};
use crate::quota::quota_unchecked;

/// Strict total order over parties used when scores tie.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    /// Larger vote count first, then lower index.
    MostVotes,
}

impl TieBreak {
    /// Whether `a` beats `b` when their scores are equal.
    pub fn prefers(self, instance: &ElectionInstance, a: usize, b: usize) -> bool {
        match self {
            TieBreak::LowestIndex => a < b,
            TieBreak::MostVotes => instance
                .vote(a)
                .cmp(&instance.vote(b))
                .then(b.cmp(&a))
                .is_gt(),
        }
    }

    fn key(self, instance: &ElectionInstance, party: usize) -> (u64, usize) {
        match self {
            TieBreak::LowestIndex => (0, usize::MAX - party),
            TieBreak::MostVotes => (instance.vote(party), usize::MAX - party),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lowest-index" | "index" => Ok(TieBreak::LowestIndex),
            "most-votes" | "votes" => Ok(TieBreak::MostVotes),
            _ => Err(format!("unknown tie-break mode {s:?} (lowest-index, most-votes)")),
        }
    }
}

/// A round score; `Infinite` marks a zero divisor and beats every finite score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Score {
    Finite(Fraction),
    Infinite,
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Finite(x) => write!(f, "{x}"),
            Score::Infinite => write!(f, "inf"),
        }
    }
}

/// Weighted divisor functions `f(g, w) = g + c * w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DivisorFamily {
    /// `c = 0`
    AdamsW,
    /// `c = 1`
    DHondtW,
    /// Any non-negative `c`; `1/2` gives a weighted Sainte-Laguë.
    Generic(Fraction),
}

impl DivisorFamily {
    pub fn offset(self) -> Fraction {
        match self {
            DivisorFamily::AdamsW => Fraction::ZERO,
            DivisorFamily::DHondtW => Fraction::from_integer(1),
            DivisorFamily::Generic(c) => c,
        }
    }
}

/// Count-based methods that ignore seat weights when choosing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicMethod {
    Adams,
    DHondt,
    /// Largest remainder (Hamilton).
    Lrm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Divisor(DivisorFamily),
    Greedy,
    Classic(ClassicMethod),
}

impl Method {
    pub const ADAMS_W: Method = Method::Divisor(DivisorFamily::AdamsW);
    pub const DHONDT_W: Method = Method::Divisor(DivisorFamily::DHondtW);

    pub fn assign(
        self,
        instance: &ElectionInstance,
        tie: TieBreak,
    ) -> Result<(SeatAssignment, MethodTrace)> {
        match self {
            Method::Divisor(family) => divisor_assign(instance, family, tie),
            Method::Greedy => greedy_assign(instance, tie),
            Method::Classic(method) => classic_assign(instance, method, tie),
        }
    }

    /// Every method whose rounds are `v_p / f(.)` with a fixed `f`.
    pub fn is_divisor(self) -> bool {
        match self {
            Method::Divisor(_) => true,
            Method::Classic(ClassicMethod::Adams | ClassicMethod::DHondt) => true,
            Method::Greedy | Method::Classic(ClassicMethod::Lrm) => false,
        }
    }

    pub fn name(self) -> String {
        match self {
            Method::Divisor(DivisorFamily::AdamsW) => "adams-w".into(),
            Method::Divisor(DivisorFamily::DHondtW) => "dhondt-w".into(),
            Method::Divisor(DivisorFamily::Generic(c)) => format!("divisor-w:{c}"),
            Method::Greedy => "greedy".into(),
            Method::Classic(ClassicMethod::Adams) => "adams".into(),
            Method::Classic(ClassicMethod::DHondt) => "dhondt".into(),
            Method::Classic(ClassicMethod::Lrm) => "lrm".into(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    /// `adams-w`, `dhondt-w`, `sainte-lague-w`, `divisor-w:<c>`, `greedy`,
    /// `adams`, `dhondt`, `lrm`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let m = match s {
            "adams-w" => Method::ADAMS_W,
            "dhondt-w" => Method::DHONDT_W,
            "sainte-lague-w" => Method::Divisor(DivisorFamily::Generic(Fraction::new(1, 2))),
            "greedy" => Method::Greedy,
            "adams" => Method::Classic(ClassicMethod::Adams),
            "dhondt" => Method::Classic(ClassicMethod::DHondt),
            "lrm" | "hamilton" => Method::Classic(ClassicMethod::Lrm),
            other => {
                let c = other
                    .strip_prefix("divisor-w:")
                    .ok_or_else(|| format!("unknown method {other:?}"))?;
                let c: Fraction = c.parse()?;
                if c.is_negative() {
                    return Err(format!("divisor offset must be non-negative, got {c}"));
                }
                Method::Divisor(DivisorFamily::Generic(c))
            }
        };
        Ok(m)
    }
}

/// How a trace's chosen party relates to its round scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RoundRule {
    /// The chosen party maximises the score under the tie-break order.
    Argmax,
    /// Scores are remaining seat allotments; the lowest-indexed party with a
    /// positive allotment fills the seat.
    Allotment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Round {
    pub seat: usize,
    pub weight: u64,
    pub scores: Vec<Score>,
    pub chosen: usize,
    /// More than one party shared the winning score.
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodTrace {
    pub method: Method,
    pub rule: RoundRule,
    pub rounds: Vec<Round>,
    pub assignment: SeatAssignment,
}

impl MethodTrace {
    /// Re-derives every round's choice from the recorded scores.
    pub fn replays(&self, instance: &ElectionInstance, tie: TieBreak) -> bool {
        if self.rounds.len() != instance.num_seats() {
            return false;
        }
        self.rounds.iter().enumerate().all(|(t, round)| {
            if round.seat != t
                || round.weight != instance.weight(t)
                || self.assignment.party_of(t) != round.chosen
            {
                return false;
            }
            match self.rule {
                RoundRule::Argmax => {
                    let (winner, tied) = pick_max(instance, tie, &round.scores);
                    winner == round.chosen && tied == round.tied
                }
                RoundRule::Allotment => {
                    round.scores.iter().position(|s| *s > Score::Finite(Fraction::ZERO))
                        == Some(round.chosen)
                }
            }
        })
    }
}

/// Argmax of `scores` under `tie`, plus whether the maximum was shared.
fn pick_max(instance: &ElectionInstance, tie: TieBreak, scores: &[Score]) -> (usize, bool) {
    let mut best = 0;
    let mut tied = false;
    for p in 1..scores.len() {
        match scores[p].cmp(&scores[best]) {
            Ordering::Greater => {
                best = p;
                tied = false;
            }
            Ordering::Equal => {
                tied = true;
                if tie.prefers(instance, p, best) {
                    best = p;
                }
            }
            Ordering::Less => {}
        }
    }
    (best, tied)
}

fn run_rounds(
    instance: &ElectionInstance,
    method: Method,
    tie: TieBreak,
    mut score: impl FnMut(usize, u64, &[u64], &[u64]) -> Score,
) -> (SeatAssignment, MethodTrace) {
    let m = instance.num_parties();
    let mut gained = vec![0u64; m];
    let mut counts = vec![0u64; m];
    let mut seats = Vec::with_capacity(instance.num_seats());
    let mut rounds = Vec::with_capacity(instance.num_seats());
    for (t, &w) in instance.weights().iter().enumerate() {
        let scores: Vec<Score> = (0..m).map(|p| score(p, w, &gained, &counts)).collect();
        let (chosen, tied) = pick_max(instance, tie, &scores);
        gained[chosen] += w;
        counts[chosen] += 1;
        seats.push(chosen);
        rounds.push(Round {
            seat: t,
            weight: w,
            scores,
            chosen,
            tied,
        });
    }
    let assignment = SeatAssignment::from_vec_unchecked(seats);
    let trace = MethodTrace {
        method,
        rule: RoundRule::Argmax,
        rounds,
        assignment: assignment.clone(),
    };
    (assignment, trace)
}

fn ratio(votes: u64, divisor: Fraction) -> Score {
    if divisor == Fraction::ZERO {
        Score::Infinite
    } else {
        Score::Finite(Fraction::from(votes) / divisor)
    }
}

/// Weighted divisor method: seat `t` goes to the party maximising
/// `v_p / (g_p(t) + c * w_t)`, where `g_p(t)` is the weight it already holds.
pub fn divisor_assign(
    instance: &ElectionInstance,
    family: DivisorFamily,
    tie: TieBreak,
) -> Result<(SeatAssignment, MethodTrace)> {
    let offset = family.offset();
    if offset.is_negative() {
        return Err(Error::NegativeOffset(offset.to_string()));
    }
    Ok(run_rounds(
        instance,
        Method::Divisor(family),
        tie,
        |p, w, gained, _| {
            let divisor = Fraction::from(gained[p]) + offset * Fraction::from(w);
            ratio(instance.vote(p), divisor)
        },
    ))
}

/// Seat `t` goes to the party with the largest outstanding entitlement
/// `q(p) - g_p(t)`.
pub fn greedy_assign(
    instance: &ElectionInstance,
    tie: TieBreak,
) -> Result<(SeatAssignment, MethodTrace)> {
    let quotas: Vec<Fraction> = instance
        .parties()
        .map(|p| quota_unchecked(instance, p))
        .collect();
    Ok(run_rounds(instance, Method::Greedy, tie, |p, _, gained, _| {
        Score::Finite(quotas[p] - Fraction::from(gained[p]))
    }))
}

/// Unit-count methods evaluated on a weighted instance.
///
/// Adams and D'Hondt score by seat counts and hand seat `t` to the round
/// winner. LRM fixes seat counts first (floor of `k * v_p / n`, then largest
/// fractional remainders) and then fills seats in index order, party by party.
pub fn classic_assign(
    instance: &ElectionInstance,
    method: ClassicMethod,
    tie: TieBreak,
) -> Result<(SeatAssignment, MethodTrace)> {
    let tag = Method::Classic(method);
    match method {
        ClassicMethod::Adams => Ok(run_rounds(instance, tag, tie, |p, _, _, counts| {
            ratio(instance.vote(p), Fraction::from(counts[p]))
        })),
        ClassicMethod::DHondt => Ok(run_rounds(instance, tag, tie, |p, _, _, counts| {
            ratio(instance.vote(p), Fraction::from(counts[p] + 1))
        })),
        ClassicMethod::Lrm => Ok(largest_remainder(instance, tie)),
    }
}

/// Seat counts under the largest remainder method.
pub fn largest_remainder_counts(instance: &ElectionInstance, tie: TieBreak) -> Vec<u64> {
    let k = instance.num_seats() as i128;
    let n = instance.total_votes() as i128;
    let shares: Vec<Fraction> = instance
        .parties()
        .map(|p| Fraction::new(k * instance.vote(p) as i128, n))
        .collect();
    let mut counts: Vec<u64> = shares.iter().map(|s| s.floor() as u64).collect();
    let left = instance.num_seats() as u64 - counts.iter().sum::<u64>();

    let mut order: Vec<usize> = instance.parties().collect();
    order.sort_by(|&a, &b| {
        let ra = shares[a] - Fraction::from(counts[a]);
        let rb = shares[b] - Fraction::from(counts[b]);
        rb.cmp(&ra)
            .then_with(|| tie.key(instance, b).cmp(&tie.key(instance, a)))
    });
    for &p in order.iter().take(left as usize) {
        counts[p] += 1;
    }
    counts
}

fn largest_remainder(instance: &ElectionInstance, tie: TieBreak) -> (SeatAssignment, MethodTrace) {
    let mut remaining = largest_remainder_counts(instance, tie);
    let mut seats = Vec::with_capacity(instance.num_seats());
    let mut rounds = Vec::with_capacity(instance.num_seats());
    for (t, &w) in instance.weights().iter().enumerate() {
        let scores = remaining
            .iter()
            .map(|&c| Score::Finite(Fraction::from(c)))
            .collect();
        let chosen = remaining
            .iter()
            .position(|&c| c > 0)
            .expect("counts sum to k");
        remaining[chosen] -= 1;
        seats.push(chosen);
        rounds.push(Round {
            seat: t,
            weight: w,
            scores,
            chosen,
            tied: false,
        });
    }
    let assignment = SeatAssignment::from_vec_unchecked(seats);
    let trace = MethodTrace {
        method: Method::Classic(ClassicMethod::Lrm),
        rule: RoundRule::Allotment,
        rounds,
        assignment: assignment.clone(),
    };
    (assignment, trace)
}
