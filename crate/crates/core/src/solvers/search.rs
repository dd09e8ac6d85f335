use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{Axiom, AxiomChecker};
use crate::error::{Error, Result};
use crate::harness::{generate_instances, GeneratorConfig};
use crate::instance::{ElectionInstance, SeatAssignment};

use super::brute::brute_force_with;
use super::SolveStatus;

/// Candidates are evaluated in parallel in blocks of this size; the first
/// hit in enumeration order wins.
const CHUNK: usize = 512;

/// A universal statement about all instances that the search tries to refute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// Every instance admits an assignment meeting all listed axioms.
    Satisfiable(Vec<Axiom>),
    /// Every assignment meeting the first axiom meets the second.
    Implies(Axiom, Axiom),
}

impl FromStr for Claim {
    type Err = String;

    /// `wlq-x`, `wef1+wlq-1`, `wefx=>wuq-x`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((a, b)) = s.split_once("=>") {
            return Ok(Claim::Implies(a.trim().parse()?, b.trim().parse()?));
        }
        let axioms = s
            .split('+')
            .map(|a| a.trim().parse())
            .collect::<Result<Vec<Axiom>, _>>()?;
        Ok(Claim::Satisfiable(axioms))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Satisfiable(axioms) => {
                let names: Vec<_> = axioms.iter().map(|a| a.slug()).collect();
                write!(f, "{} always satisfiable", names.join(" + "))
            }
            Claim::Implies(a, b) => write!(f, "{} implies {}", a.slug(), b.slug()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStrategy {
    /// Seeded random instances drawn from the generator bounds.
    Random,
    /// Every instance within the bounds: parties, then seats, then weight
    /// vectors and vote vectors in lexicographic order.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Bounds and seed; `count` is the instance budget.
    pub generator: GeneratorConfig,
    pub strategy: SearchStrategy,
    /// Per-instance brute-force cap on `m^k`.
    pub max_assignments: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Brute force covered all assignments without a hit.
    NoAssignment { explored: u64 },
    /// Meets the premise of an implication but not its conclusion.
    Separating(SeatAssignment),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: ElectionInstance,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub counterexample: Option<Counterexample>,
    /// Instances examined, up to and including the counterexample.
    pub examined: u64,
    /// Instances skipped because `m^k` exceeded the brute-force cap.
    pub skipped: u64,
}

enum Probe {
    Refutes(Certificate),
    Consistent,
    TooLarge,
}

pub fn search_counterexample(config: &SearchConfig, claim: &Claim) -> Result<SearchOutcome> {
    config.generator.validate()?;
    if let Claim::Satisfiable(axioms) = claim {
        if axioms.is_empty() {
            return Err(Error::InvalidBounds("claim names no axiom".into()));
        }
    }
    let budget = config.generator.count;
    let candidates: Box<dyn Iterator<Item = ElectionInstance>> = match config.strategy {
        SearchStrategy::Random => Box::new(generate_instances(&config.generator)?),
        SearchStrategy::Exhaustive => Box::new(exhaustive(&config.generator).take(budget)),
    };

    let mut outcome = SearchOutcome {
        counterexample: None,
        examined: 0,
        skipped: 0,
    };
    let mut candidates = candidates.peekable();
    while candidates.peek().is_some() {
        let chunk: Vec<ElectionInstance> = candidates.by_ref().take(CHUNK).collect();
        let probes: Vec<Probe> = chunk
            .par_iter()
            .map(|inst| probe(inst, claim, config.max_assignments))
            .collect::<Result<_>>()?;
        for (inst, p) in chunk.into_iter().zip(probes) {
            outcome.examined += 1;
            match p {
                Probe::Refutes(certificate) => {
                    outcome.counterexample = Some(Counterexample {
                        instance: inst,
                        certificate,
                    });
                    return Ok(outcome);
                }
                Probe::TooLarge => outcome.skipped += 1,
                Probe::Consistent => {}
            }
        }
    }
    Ok(outcome)
}

fn probe(instance: &ElectionInstance, claim: &Claim, cap: u64) -> Result<Probe> {
    let checker = AxiomChecker::new(instance)?;
    let result = match claim {
        Claim::Satisfiable(axioms) => {
            brute_force_with(instance, cap, |s| checker.holds_all(s, axioms))?
        }
        Claim::Implies(a, b) => brute_force_with(instance, cap, |s| {
            checker.holds(s, *a) && !checker.holds(s, *b)
        })?,
    };
    Ok(match (claim, result.status) {
        (_, SolveStatus::ResourceLimitExceeded) => Probe::TooLarge,
        (Claim::Satisfiable(_), SolveStatus::NoneExists) => Probe::Refutes(Certificate::NoAssignment {
            explored: result.explored,
        }),
        (Claim::Implies(..), SolveStatus::Found(s)) => Probe::Refutes(Certificate::Separating(s)),
        _ => Probe::Consistent,
    })
}

fn exhaustive(cfg: &GeneratorConfig) -> impl Iterator<Item = ElectionInstance> {
    let cfg = cfg.clone();
    (cfg.min_parties..=cfg.max_parties).flat_map(move |m| {
        let cfg = cfg.clone();
        (cfg.min_seats..=cfg.max_seats).flat_map(move |k| {
            let cfg = cfg.clone();
            non_increasing(k, cfg.max_weight).flat_map(move |weights| {
                tuples(m, cfg.max_votes).map(move |votes| {
                    ElectionInstance::new(votes, weights.clone())
                        .expect("enumerated entries are positive")
                })
            })
        })
    })
}

/// Non-increasing vectors over `1..=max` in lexicographic order.
fn non_increasing(len: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut next = Some(vec![1u64; len]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut v = current.clone();
        let bump = (0..len)
            .rev()
            .find(|&i| v[i] < if i == 0 { max } else { v[i - 1] });
        if let Some(i) = bump {
            v[i] += 1;
            v[i + 1..].fill(1);
            next = Some(v);
        }
        Some(current)
    })
}

/// All vectors over `1..=max` in lexicographic order.
fn tuples(len: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut next = Some(vec![1u64; len]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut v = current.clone();
        let bump = (0..len).rev().find(|&i| v[i] < max);
        if let Some(i) = bump {
            v[i] += 1;
            v[i + 1..].fill(1);
            next = Some(v);
        }
        Some(current)
    })
}
