//! Per-trial random streams.
//!
//! Every trial owns independent ChaCha20 streams, one per role, keyed by
//! the run seed. A trial's data therefore depends only on
//! `(seed, trial, role)` and not on the order in which trials run.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Role {
    NullNoise = 0,
    AltNoise = 1,
    Signal = 2,
    Channel = 3,
}

const ROLES: u64 = 4;

pub fn stream(seed: u64, trial: u64, role: Role) -> ChaCha20Rng {
    assert!(trial < u64::MAX / ROLES, "trial index {trial} exhausts the stream space");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial * ROLES + role as u64);
    rng
}
