//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semcom::io::{generate_gridworld, GridWorldParams};
use semcom::random::{model, InstanceShape};
use semcom::Model;

pub fn gridworld() -> Model {
    generate_gridworld(&GridWorldParams::default()).expect("default grid")
}

/// A grid world on a larger board with destinations in opposite corners.
pub fn large_gridworld(side: usize) -> Model {
    let params = GridWorldParams {
        side,
        destinations: vec![("A".into(), (0, side - 1)), ("B".into(), (side - 1, side - 1))],
        ..GridWorldParams::default()
    };
    generate_gridworld(&params).expect("corner destinations are reachable")
}

pub fn random_instance(seed: u64, meanings: usize, messages: usize) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shape = InstanceShape::new(meanings, messages);
    shape.error_free = true;
    model(&mut rng, shape)
}
