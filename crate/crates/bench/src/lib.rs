//! Shared inputs for the criterion benches.

use seatweight::harness::{generate_instances, GeneratorConfig};
use seatweight::ElectionInstance;

/// A fixed seeded corpus so bench runs are comparable.
pub fn corpus(count: usize, max_parties: usize, max_seats: usize, max_weight: u64) -> Vec<ElectionInstance> {
    let config = GeneratorConfig {
        count,
        min_parties: 2,
        max_parties,
        min_seats: 1,
        max_seats,
        max_weight,
        max_votes: 100,
        seed: 0x5eed,
    };
    generate_instances(&config).expect("bench bounds are valid").collect()
}
