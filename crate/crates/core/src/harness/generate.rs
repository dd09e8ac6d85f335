use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::ElectionInstance;

/// Bounds for random instances. Weights and votes are drawn from `1..=max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub count: usize,
    pub min_parties: usize,
    pub max_parties: usize,
    pub min_seats: usize,
    pub max_seats: usize,
    pub max_weight: u64,
    pub max_votes: u64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBounds(msg));
        if self.min_parties == 0 || self.min_seats == 0 {
            return bad("party and seat minimums must be at least 1".into());
        }
        if self.max_parties < self.min_parties {
            return bad(format!("max parties {} below min {}", self.max_parties, self.min_parties));
        }
        if self.max_seats < self.min_seats {
            return bad(format!("max seats {} below min {}", self.max_seats, self.min_seats));
        }
        if self.max_weight == 0 || self.max_votes == 0 {
            return bad("weight and vote maximums must be at least 1".into());
        }
        Ok(())
    }
}

/// Deterministic instance stream; see [`generate_instances`].
#[derive(Debug, Clone)]
pub struct InstanceStream {
    config: GeneratorConfig,
    rng: ChaCha8Rng,
    remaining: usize,
}

impl Iterator for InstanceStream {
    type Item = ElectionInstance;

    fn next(&mut self) -> Option<ElectionInstance> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(random_instance(&mut self.rng, &self.config))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for InstanceStream {}

pub fn generate_instances(config: &GeneratorConfig) -> Result<InstanceStream> {
    config.validate()?;
    Ok(InstanceStream {
        config: config.clone(),
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        remaining: config.count,
    })
}

/// One instance drawn from `rng`; `config` must already be validated.
pub fn random_instance<R: Rng>(rng: &mut R, config: &GeneratorConfig) -> ElectionInstance {
    let m = rng.random_range(config.min_parties..=config.max_parties);
    let k = rng.random_range(config.min_seats..=config.max_seats);
    let votes = (0..m).map(|_| rng.random_range(1..=config.max_votes)).collect();
    let weights = (0..k).map(|_| rng.random_range(1..=config.max_weight)).collect();
    ElectionInstance::new(votes, weights).expect("drawn entries are positive")
}
