//! Six-path vehicular-A power-delay profile with Jakes-style Dopplers.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::rng_from_seed;

pub const VEH_A_DELAYS_US: [f64; 6] = [0.0, 0.31, 0.71, 1.09, 1.73, 2.51];
pub const VEH_A_POWERS_DB: [f64; 6] = [0.0, -1.0, -9.0, -10.0, -15.0, -20.0];

/// Largest Veh-A path delay in seconds.
pub const VEH_A_MAX_DELAY: f64 = 2.51e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelPath {
    pub gain: Complex64,
    /// seconds
    pub delay: f64,
    /// Hz
    pub doppler: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalChannel {
    pub paths: Vec<ChannelPath>,
    pub tau_max: f64,
    pub nu_max: f64,
}

impl PhysicalChannel {
    pub fn empty(tau_max: f64, nu_max: f64) -> Self {
        Self {
            paths: Vec::new(),
            tau_max,
            nu_max,
        }
    }

    pub fn single(path: ChannelPath, tau_max: f64, nu_max: f64) -> Self {
        Self {
            paths: vec![path],
            tau_max,
            nu_max,
        }
    }
}

/// Mean path powers normalized to unit sum.
pub fn veh_a_powers() -> [f64; 6] {
    let lin = VEH_A_POWERS_DB.map(|db| 10f64.powf(db / 10.0));
    let total: f64 = lin.iter().sum();
    lin.map(|p| p / total)
}

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re * s, im * s)
}

/// Veh-A draw: Rayleigh gains with the profile variances and Dopplers
/// `nu_max cos(theta)`, `theta ~ U[0, 2 pi)`.
pub fn draw_veh_a_with<R: Rng + ?Sized>(rng: &mut R, nu_max: f64) -> PhysicalChannel {
    draw_veh_a_jittered(rng, nu_max, 0.0)
}

/// As [`draw_veh_a_with`], with each path delay offset by an independent
/// `U[0, jitter)` seconds.
pub fn draw_veh_a_jittered<R: Rng + ?Sized>(
    rng: &mut R,
    nu_max: f64,
    jitter: f64,
) -> PhysicalChannel {
    let powers = veh_a_powers();
    let mut paths = Vec::with_capacity(6);
    for (i, p) in powers.iter().enumerate() {
        let gain = complex_gaussian(rng, *p);
        let theta: f64 = rng.gen_range(0.0..TAU);
        let offset = if jitter > 0.0 {
            rng.gen_range(0.0..jitter)
        } else {
            0.0
        };
        paths.push(ChannelPath {
            gain,
            delay: VEH_A_DELAYS_US[i] * 1e-6 + offset,
            doppler: nu_max * theta.cos(),
        });
    }
    PhysicalChannel {
        paths,
        tau_max: VEH_A_MAX_DELAY + jitter,
        nu_max,
    }
}

pub fn draw_veh_a(seed: u64, nu_max: f64) -> PhysicalChannel {
    let mut rng: ChaCha8Rng = rng_from_seed(seed);
    draw_veh_a_with(&mut rng, nu_max)
}
