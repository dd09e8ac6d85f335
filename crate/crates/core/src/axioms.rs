//! Proportionality and envy axioms for a fixed seat assignment.
//!
//! Lower-quota relaxations use a strict `> q(p)` after adding a seat,
//! upper-quota relaxations a strict `< q(p)` after removing one, and the envy
//! axioms a weak `>=` between vote-normalised representations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Result;
use crate::fraction::Fraction;
use crate::instance::{representations_of, ElectionInstance, SeatAssignment};
use crate::quota::{check_length, QuotaTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// Representation at least the obtainable lower quota.
    WlqO,
    /// Below quota, every unheld seat would lift the party past it.
    WlqX,
    /// As `WlqX`, restricted to seats of parties strictly above their quota.
    WlqXR,
    /// Below quota, some unheld seat would lift the party past it.
    Wlq1,
    /// Representation at most the obtainable upper quota.
    WuqO,
    /// Above quota, dropping any held seat takes the party below it.
    WuqX,
    /// Above quota, dropping some held seat takes the party below it.
    Wuq1,
    Wefx,
    Wef1,
    /// Envy removed by taking a seat away from the envied party or by
    /// handing that seat to the envious one.
    Wwef1,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::WlqO,
        Axiom::WlqX,
        Axiom::WlqXR,
        Axiom::Wlq1,
        Axiom::WuqO,
        Axiom::WuqX,
        Axiom::Wuq1,
        Axiom::Wefx,
        Axiom::Wef1,
        Axiom::Wwef1,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::WlqO => "WLQ^o",
            Axiom::WlqX => "WLQ-X",
            Axiom::WlqXR => "WLQ-X-r",
            Axiom::Wlq1 => "WLQ-1",
            Axiom::WuqO => "WUQ^o",
            Axiom::WuqX => "WUQ-X",
            Axiom::Wuq1 => "WUQ-1",
            Axiom::Wefx => "WEFX",
            Axiom::Wef1 => "WEF1",
            Axiom::Wwef1 => "WWEF1",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Axiom::WlqO => "wlq-o",
            Axiom::WlqX => "wlq-x",
            Axiom::WlqXR => "wlq-x-r",
            Axiom::Wlq1 => "wlq-1",
            Axiom::WuqO => "wuq-o",
            Axiom::WuqX => "wuq-x",
            Axiom::Wuq1 => "wuq-1",
            Axiom::Wefx => "wefx",
            Axiom::Wef1 => "wef1",
            Axiom::Wwef1 => "wwef1",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axiom {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', '^'], "-");
        Axiom::ALL
            .into_iter()
            .find(|a| a.slug() == norm || a.label().to_ascii_lowercase().replace('^', "-") == norm)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LowerQuotaAxiom {
    WlqO,
    Wlq1,
    WlqX,
    WlqXR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UpperQuotaAxiom {
    WuqO,
    Wuq1,
    WuqX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EnvyAxiom {
    Wef1,
    Wefx,
    Wwef1,
}

impl From<LowerQuotaAxiom> for Axiom {
    fn from(a: LowerQuotaAxiom) -> Axiom {
        match a {
            LowerQuotaAxiom::WlqO => Axiom::WlqO,
            LowerQuotaAxiom::Wlq1 => Axiom::Wlq1,
            LowerQuotaAxiom::WlqX => Axiom::WlqX,
            LowerQuotaAxiom::WlqXR => Axiom::WlqXR,
        }
    }
}

impl From<UpperQuotaAxiom> for Axiom {
    fn from(a: UpperQuotaAxiom) -> Axiom {
        match a {
            UpperQuotaAxiom::WuqO => Axiom::WuqO,
            UpperQuotaAxiom::Wuq1 => Axiom::Wuq1,
            UpperQuotaAxiom::WuqX => Axiom::WuqX,
        }
    }
}

impl From<EnvyAxiom> for Axiom {
    fn from(a: EnvyAxiom) -> Axiom {
        match a {
            EnvyAxiom::Wef1 => Axiom::Wef1,
            EnvyAxiom::Wefx => Axiom::Wefx,
            EnvyAxiom::Wwef1 => Axiom::Wwef1,
        }
    }
}

/// Evidence that one party breaks an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// `rep < bound` for the obtainable lower quota `bound`.
    BelowObtainableLower { representation: u64, bound: u64 },
    /// `rep > bound` for the obtainable upper quota `bound`.
    AboveObtainableUpper { representation: u64, bound: u64 },
    /// `rep < q` and `rep + w_t <= q` for every unheld seat.
    NoSeatCrossesQuota { representation: u64, quota: Fraction },
    /// `rep < q` and `rep + w_seat <= q`.
    SeatBelowQuota {
        seat: usize,
        representation: u64,
        quota: Fraction,
    },
    /// `rep > q` and `rep - w_t >= q` for every held seat.
    NoSeatDropsQuota { representation: u64, quota: Fraction },
    /// `rep > q` and `rep - w_seat >= q`.
    SeatAboveQuota {
        seat: usize,
        representation: u64,
        quota: Fraction,
    },
    /// The violating party envies `envied`. `seat` is the held seat whose
    /// removal fails to clear the envy (WEFX); `None` means no seat does.
    Envy { envied: usize, seat: Option<usize> },
}

/// One-based seat and party numbers.
impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::BelowObtainableLower { representation, bound } => {
                write!(f, "rep {representation} < obtainable lower quota {bound}")
            }
            Witness::AboveObtainableUpper { representation, bound } => {
                write!(f, "rep {representation} > obtainable upper quota {bound}")
            }
            Witness::NoSeatCrossesQuota { representation, quota } => {
                write!(f, "rep {representation} stays <= quota {quota} with any single extra seat")
            }
            Witness::SeatBelowQuota { seat, representation, quota } => write!(
                f,
                "rep {representation} plus seat {} stays <= quota {quota}",
                seat + 1
            ),
            Witness::NoSeatDropsQuota { representation, quota } => write!(
                f,
                "rep {representation} stays >= quota {quota} after removing any single seat"
            ),
            Witness::SeatAboveQuota { seat, representation, quota } => write!(
                f,
                "rep {representation} minus seat {} stays >= quota {quota}",
                seat + 1
            ),
            Witness::Envy { envied, seat: Some(seat) } => write!(
                f,
                "envies party {} even without seat {}",
                envied + 1,
                seat + 1
            ),
            Witness::Envy { envied, seat: None } => write!(f, "envies party {}", envied + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub party: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub satisfied: bool,
    pub violations: Vec<Violation>,
    /// `rep(p) - q(p)` per party.
    pub slack: Vec<Fraction>,
}

/// Every verdict for one assignment, plus its distance to the quotas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdicts: BTreeMap<Axiom, AxiomVerdict>,
    pub delta: Fraction,
}

impl AxiomReport {
    pub fn satisfied(&self, axiom: Axiom) -> bool {
        self.verdicts[&axiom].satisfied
    }
}

/// Per-assignment facts every checker reads.
struct Profile {
    reps: Vec<u64>,
    // Seats are sorted heavy to light, so the first held index is the
    // heaviest held seat and the last held index the lightest.
    heaviest_held: Vec<Option<usize>>,
    lightest_held: Vec<Option<usize>>,
    heaviest_unheld: Vec<Option<usize>>,
    lightest_unheld: Vec<Option<usize>>,
}

impl Profile {
    fn new(instance: &ElectionInstance, seats: &[usize]) -> Self {
        let m = instance.num_parties();
        let mut heaviest_held = vec![None; m];
        let mut lightest_held = vec![None; m];
        for (t, &p) in seats.iter().enumerate() {
            heaviest_held[p].get_or_insert(t);
            lightest_held[p] = Some(t);
        }
        let unheld = |from_front: bool, p: usize| {
            let mut it = (0..seats.len()).filter(|&t| seats[t] != p);
            if from_front {
                it.next()
            } else {
                it.next_back()
            }
        };
        Profile {
            reps: representations_of(instance, seats),
            heaviest_held,
            lightest_held,
            heaviest_unheld: (0..m).map(|p| unheld(true, p)).collect(),
            lightest_unheld: (0..m).map(|p| unheld(false, p)).collect(),
        }
    }
}

/// Axiom checks against precomputed quota bounds.
pub struct AxiomChecker<'a> {
    instance: &'a ElectionInstance,
    table: QuotaTable,
}

impl<'a> AxiomChecker<'a> {
    pub fn new(instance: &'a ElectionInstance) -> Result<Self> {
        Ok(AxiomChecker {
            instance,
            table: QuotaTable::new(instance)?,
        })
    }

    pub fn with_table(instance: &'a ElectionInstance, table: QuotaTable) -> Self {
        AxiomChecker { instance, table }
    }

    pub fn instance(&self) -> &ElectionInstance {
        self.instance
    }

    pub fn table(&self) -> &QuotaTable {
        &self.table
    }

    pub fn check(&self, assignment: &SeatAssignment, axiom: Axiom) -> Result<AxiomVerdict> {
        check_length(self.instance, assignment)?;
        let profile = Profile::new(self.instance, assignment.seats());
        Ok(self.verdict(&profile, axiom))
    }

    /// Quick yes/no on a raw seat vector. The caller guarantees it fits the
    /// instance.
    pub fn holds(&self, seats: &[usize], axiom: Axiom) -> bool {
        let profile = Profile::new(self.instance, seats);
        self.violations(&profile, axiom, true).is_empty()
    }

    pub fn holds_all(&self, seats: &[usize], axioms: &[Axiom]) -> bool {
        let profile = Profile::new(self.instance, seats);
        axioms
            .iter()
            .all(|&a| self.violations(&profile, a, true).is_empty())
    }

    pub fn check_all(&self, assignment: &SeatAssignment) -> Result<AxiomReport> {
        check_length(self.instance, assignment)?;
        let profile = Profile::new(self.instance, assignment.seats());
        let verdicts = Axiom::ALL
            .into_iter()
            .map(|a| (a, self.verdict(&profile, a)))
            .collect();
        Ok(AxiomReport {
            verdicts,
            delta: delta_from_reps(self.instance, &self.table.quotas, &profile.reps),
        })
    }

    fn verdict(&self, profile: &Profile, axiom: Axiom) -> AxiomVerdict {
        let violations = self.violations(profile, axiom, false);
        AxiomVerdict {
            axiom,
            satisfied: violations.is_empty(),
            violations,
            slack: self
                .instance
                .parties()
                .map(|p| Fraction::from(profile.reps[p]) - self.table.quotas[p])
                .collect(),
        }
    }

    fn violations(&self, profile: &Profile, axiom: Axiom, first_only: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for p in self.instance.parties() {
            if let Some(witness) = self.party_witness(profile, axiom, p) {
                out.push(Violation { party: p, witness });
                if first_only {
                    break;
                }
            }
        }
        out
    }

    fn party_witness(&self, profile: &Profile, axiom: Axiom, p: usize) -> Option<Witness> {
        let inst = self.instance;
        let rep = profile.reps[p];
        let q = self.table.quotas[p];
        let rep_f = Fraction::from(rep);
        let w = |t: usize| inst.weight(t);

        match axiom {
            Axiom::WlqO => {
                let bound = self.table.lower_obtainable[p];
                (rep < bound).then_some(Witness::BelowObtainableLower {
                    representation: rep,
                    bound,
                })
            }
            Axiom::WuqO => {
                let bound = self.table.upper_obtainable[p];
                (rep > bound).then_some(Witness::AboveObtainableUpper {
                    representation: rep,
                    bound,
                })
            }
            Axiom::Wlq1 | Axiom::WlqX | Axiom::WlqXR => {
                if rep_f >= q {
                    return None;
                }
                let crosses = |t: usize| Fraction::from(rep + w(t)) > q;
                match axiom {
                    Axiom::Wlq1 => match profile.heaviest_unheld[p] {
                        Some(t) if crosses(t) => None,
                        _ => Some(Witness::NoSeatCrossesQuota {
                            representation: rep,
                            quota: q,
                        }),
                    },
                    Axiom::WlqX => profile.lightest_unheld[p]
                        .filter(|&t| !crosses(t))
                        .map(|seat| Witness::SeatBelowQuota {
                            seat,
                            representation: rep,
                            quota: q,
                        }),
                    _ => {
                        let pool = inst
                            .parties()
                            .filter(|&o| o != p && Fraction::from(profile.reps[o]) > self.table.quotas[o])
                            .filter_map(|o| profile.lightest_held[o])
                            .max();
                        pool.filter(|&t| !crosses(t))
                            .map(|seat| Witness::SeatBelowQuota {
                                seat,
                                representation: rep,
                                quota: q,
                            })
                    }
                }
            }
            Axiom::Wuq1 | Axiom::WuqX => {
                if rep_f <= q {
                    return None;
                }
                let drops = |t: usize| Fraction::from(rep - w(t)) < q;
                if axiom == Axiom::Wuq1 {
                    match profile.heaviest_held[p] {
                        Some(t) if drops(t) => None,
                        _ => Some(Witness::NoSeatDropsQuota {
                            representation: rep,
                            quota: q,
                        }),
                    }
                } else {
                    profile.lightest_held[p]
                        .filter(|&t| !drops(t))
                        .map(|seat| Witness::SeatAboveQuota {
                            seat,
                            representation: rep,
                            quota: q,
                        })
                }
            }
            Axiom::Wefx | Axiom::Wef1 | Axiom::Wwef1 => {
                let vx = inst.vote(p) as u128;
                let rx = rep as u128;
                for y in inst.parties().filter(|&y| y != p) {
                    let (Some(heavy), Some(light)) = (profile.heaviest_held[y], profile.lightest_held[y]) else {
                        continue;
                    };
                    let vy = inst.vote(y) as u128;
                    let ry = profile.reps[y] as u128;
                    // rep_x / v_x >= (rep_y - w_t) / v_y
                    let removal_clears = |t: usize| rx * vy >= (ry - w(t) as u128) * vx;
                    // (rep_x + w_t) / v_x >= rep_y / v_y
                    let addition_clears = |t: usize| (rx + w(t) as u128) * vy >= ry * vx;
                    let witness = match axiom {
                        Axiom::Wefx => (!removal_clears(light)).then_some(Some(light)),
                        Axiom::Wef1 => (!removal_clears(heavy)).then_some(None),
                        _ => (!removal_clears(heavy) && !addition_clears(heavy)).then_some(None),
                    };
                    if let Some(seat) = witness {
                        return Some(Witness::Envy { envied: y, seat });
                    }
                }
                None
            }
        }
    }
}

fn delta_from_reps(instance: &ElectionInstance, quotas: &[Fraction], reps: &[u64]) -> Fraction {
    let total: Fraction = instance
        .parties()
        .map(|p| (Fraction::from(reps[p]) - quotas[p]).abs())
        .sum();
    total / Fraction::from(instance.total_votes())
}

pub fn check_lower_quota(
    instance: &ElectionInstance,
    assignment: &SeatAssignment,
    axiom: LowerQuotaAxiom,
) -> Result<AxiomVerdict> {
    AxiomChecker::new(instance)?.check(assignment, axiom.into())
}

pub fn check_upper_quota(
    instance: &ElectionInstance,
    assignment: &SeatAssignment,
    axiom: UpperQuotaAxiom,
) -> Result<AxiomVerdict> {
    AxiomChecker::new(instance)?.check(assignment, axiom.into())
}

pub fn check_envy(
    instance: &ElectionInstance,
    assignment: &SeatAssignment,
    axiom: EnvyAxiom,
) -> Result<AxiomVerdict> {
    AxiomChecker::new(instance)?.check(assignment, axiom.into())
}

/// Average per-voter distance to the quota: `(1/n) * sum_p |rep(p) - q(p)|`.
pub fn delta_distance(instance: &ElectionInstance, assignment: &SeatAssignment) -> Result<Fraction> {
    check_length(instance, assignment)?;
    let quotas: Vec<Fraction> = instance
        .parties()
        .map(|p| crate::quota::quota_unchecked(instance, p))
        .collect();
    Ok(delta_from_reps(
        instance,
        &quotas,
        &assignment.representations(instance),
    ))
}

pub fn check_all(instance: &ElectionInstance, assignment: &SeatAssignment) -> Result<AxiomReport> {
    AxiomChecker::new(instance)?.check_all(assignment)
}
