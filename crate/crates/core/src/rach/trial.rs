//! Simulated grant-free access slots.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;

use crate::channel::{
    add_noise, draw_veh_a_jittered, effective_taps, PhysicalChannel, PulseShapingFilter, TapWindow,
    VEH_A_MAX_DELAY,
};
use crate::dd::{twisted_convolve, DDGrid, DDSignal};
use crate::error::{Error, Result};
use crate::waveforms::ZcPilot;

/// Options for the user channels of an access slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccessChannelModel {
    pub nu_max: f64,
    /// extra per-path delay drawn from `U[0, jitter)` seconds; 0 keeps the
    /// shared Veh-A delays
    pub delay_jitter: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccessTrial {
    /// distinct preamble indices of the active users
    pub active: Vec<usize>,
    pub channels: Vec<PhysicalChannel>,
    /// noise-free superposition of the users' received preambles
    pub clean: DDSignal,
}

/// Noise variance for a per-user SNR: unit pilot energy over `sigma^2 MN`.
pub fn noise_variance_for_snr(grid: &DDGrid, snr_db: f64) -> f64 {
    1.0 / (10f64.powf(snr_db / 10.0) * grid.mn() as f64)
}

/// Draws the active set and the user channels; noise is added separately so
/// one draw can be reused across SNR points.
pub fn draw_access_trial<R: Rng + ?Sized>(
    k: usize,
    preambles: &[ZcPilot],
    grid: &DDGrid,
    filt: &PulseShapingFilter,
    model: &AccessChannelModel,
    rng: &mut R,
) -> Result<AccessTrial> {
    if k > preambles.len() {
        return Err(Error::InvalidParameter(format!(
            "{k} active users but only {} preambles",
            preambles.len()
        )));
    }
    let active = sample(rng, preambles.len(), k).into_vec();
    let window = TapWindow::for_spreads(grid, VEH_A_MAX_DELAY + model.delay_jitter, model.nu_max);
    let mut clean = DDSignal::zeros(*grid);
    let mut channels = Vec::with_capacity(k);
    for &j in &active {
        let ch = draw_veh_a_jittered(rng, model.nu_max, model.delay_jitter);
        let taps = effective_taps(&ch.paths, filt, grid, &window);
        clean.axpy(
            Complex64::new(1.0, 0.0),
            &twisted_convolve(&taps, &preambles[j].signal()),
        )?;
        channels.push(ch);
    }
    Ok(AccessTrial {
        active,
        channels,
        clean,
    })
}

impl AccessTrial {
    /// Received slot at the given per-user SNR.
    pub fn observe<R: Rng + ?Sized>(&self, snr_db: f64, rng: &mut R) -> Result<DDSignal> {
        let mut y = self.clean.clone();
        let v = noise_variance_for_snr(y.grid(), snr_db);
        add_noise(&mut y, v, rng)?;
        Ok(y)
    }
}

/// One access slot at a single SNR: draw, then add noise.
pub fn simulate_access_trial<R: Rng + ?Sized>(
    k: usize,
    preambles: &[ZcPilot],
    grid: &DDGrid,
    filt: &PulseShapingFilter,
    model: &AccessChannelModel,
    snr_db: f64,
    rng: &mut R,
) -> Result<(AccessTrial, DDSignal)> {
    let trial = draw_access_trial(k, preambles, grid, filt, model, rng)?;
    let y = trial.observe(snr_db, rng)?;
    Ok((trial, y))
}
