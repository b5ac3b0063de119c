//! Zak-OTFS delay-Doppler signal processing with Zadoff-Chu spread pilots.
//!
//! Root-of-unity convention: `xi_K = exp(+j 2 pi / K)` throughout.

pub mod arith;
pub mod channel;
pub mod dd;
mod error;
pub mod experiment;
pub mod rach;
pub mod receiver;
pub mod waveforms;

pub use error::{Error, Result};

pub use channel::{EffectiveChannel, PhysicalChannel, PulseShapingFilter};
pub use dd::{DDGrid, DDSignal, FilterTaps, TDSignal};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every seeded operation.
pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-trial seed `base XOR trial`.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    base ^ trial
}
