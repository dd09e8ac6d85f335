//! House monotonicity: does any party lose representation when one seat is
//! added to the house?

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{random_instance, GeneratorConfig};
use crate::instance::{ElectionInstance, SeatAssignment};
use crate::methods::{Method, MethodTrace, TieBreak};

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HmMode {
    /// The extra seat may have any weight.
    Full,
    /// The extra seat weighs at most the lightest existing seat.
    Min,
}

impl FromStr for HmMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(HmMode::Full),
            "min" => Ok(HmMode::Min),
            _ => Err(format!("unknown mode `{s}` (full, min)")),
        }
    }
}

impl fmt::Display for HmMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HmMode::Full => "full",
            HmMode::Min => "min",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HmViolation {
    pub party: usize,
    pub before: u64,
    pub after: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HmReport {
    pub method: Method,
    pub mode: HmMode,
    pub base: ElectionInstance,
    pub extra_weight: u64,
    pub augmented: ElectionInstance,
    /// Index of the extra seat in `augmented`.
    pub inserted_at: usize,
    pub base_assignment: SeatAssignment,
    pub augmented_assignment: SeatAssignment,
    pub base_representation: Vec<u64>,
    pub augmented_representation: Vec<u64>,
    pub violations: Vec<HmViolation>,
    #[serde(skip)]
    pub base_trace: MethodTrace,
    #[serde(skip)]
    pub augmented_trace: MethodTrace,
}

impl HmReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_house_monotonicity(
    method: Method,
    instance: &ElectionInstance,
    extra: u64,
    mode: HmMode,
    tie: TieBreak,
) -> Result<HmReport> {
    if mode == HmMode::Min && extra > instance.smallest_weight() {
        return Err(Error::ExtraWeightTooLarge {
            extra,
            smallest: instance.smallest_weight(),
        });
    }
    let (augmented, inserted_at) = instance.with_extra_seat(extra)?;
    let (base_assignment, base_trace) = method.assign(instance, tie)?;
    let (augmented_assignment, augmented_trace) = method.assign(&augmented, tie)?;
    let base_representation = base_assignment.representations(instance);
    let augmented_representation = augmented_assignment.representations(&augmented);
    let violations = base_representation
        .iter()
        .zip(&augmented_representation)
        .enumerate()
        .filter(|(_, (b, a))| a < b)
        .map(|(party, (&before, &after))| HmViolation {
            party,
            before,
            after,
        })
        .collect();
    Ok(HmReport {
        method,
        mode,
        base: instance.clone(),
        extra_weight: extra,
        augmented,
        inserted_at,
        base_assignment,
        augmented_assignment,
        base_representation,
        augmented_representation,
        violations,
        base_trace,
        augmented_trace,
    })
}

/// Samples `config.count` (instance, extra weight) pairs and returns the
/// first violating report in sampling order. Extra weights are drawn from
/// `1..=max_weight` in full mode and `1..=w_k` in min mode.
pub fn search_hm_violation(
    method: Method,
    mode: HmMode,
    config: &GeneratorConfig,
    tie: TieBreak,
) -> Result<Option<HmReport>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut remaining = config.count;
    while remaining > 0 {
        let n = remaining.min(CHUNK);
        remaining -= n;
        let pairs: Vec<(ElectionInstance, u64)> = (0..n)
            .map(|_| {
                let inst = random_instance(&mut rng, config);
                let top = match mode {
                    HmMode::Full => config.max_weight,
                    HmMode::Min => inst.smallest_weight(),
                };
                let extra = rng.random_range(1..=top);
                (inst, extra)
            })
            .collect();
        let reports: Vec<HmReport> = pairs
            .par_iter()
            .map(|(inst, extra)| check_house_monotonicity(method, inst, *extra, mode, tie))
            .collect::<Result<_>>()?;
        if let Some(hit) = reports.into_iter().find(|r| !r.is_monotone()) {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}
