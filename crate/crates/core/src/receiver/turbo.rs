//! Joint pilot-and-data subframes: estimate, cancel, detect, and the turbo
//! refinement that removes the detected data before re-estimating.

use num_complex::Complex64;

use super::detect::{lmmse_detect_with, Detection, LmmseMethod};
use super::estimate::{ChannelEstimate, ChannelEstimator};
use super::metrics::{ber, nmse};
use crate::dd::{twisted_convolve, DDGrid, DDSignal, FilterTaps};
use crate::error::{Error, Result};
use crate::waveforms::{data_frame_signal, Pilot};

/// Average 4-QAM symbol energy.
pub const SYMBOL_ENERGY: f64 = 1.0;

/// Pilot energy for a pilot-to-data ratio in dB, against the total data
/// energy of a full frame (`MN` symbols).
pub fn pilot_energy_for_pdr(grid: &DDGrid, pdr_db: f64) -> f64 {
    10f64.powf(pdr_db / 10.0) * grid.mn() as f64 * SYMBOL_ENERGY
}

/// One superimposed pilot-plus-data subframe.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePlan {
    pub pilot: Pilot,
    pub pilot_energy: f64,
    /// k-major 4-QAM symbols on every grid point
    pub symbols: Vec<Complex64>,
    pub noise_variance: f64,
}

impl FramePlan {
    /// `sqrt(E_p) pilot + data`.
    pub fn transmit_signal(&self) -> Result<DDSignal> {
        let grid = self.pilot.grid();
        let mut x = data_frame_signal(&self.symbols, grid)?;
        x.axpy(
            Complex64::new(self.pilot_energy.sqrt(), 0.0),
            &self.pilot.unit_signal(),
        )?;
        Ok(x)
    }

    pub fn pdr_db(&self) -> f64 {
        let data: f64 = self.symbols.iter().map(|s| s.norm_sqr()).sum();
        10.0 * (self.pilot_energy / data).log10()
    }
}

/// Noise plus residual-pilot variance seen by the detector, estimated from
/// the power left after cancellation beyond what the data and noise explain.
pub fn interference_variance(y_data: &DDSignal, est: &ChannelEstimate, noise_variance: f64) -> f64 {
    let mean = y_data.energy() / y_data.grid().mn() as f64;
    let explained = est.taps.energy() * SYMBOL_ENERGY + noise_variance;
    noise_variance + (mean - explained).max(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TurboResult {
    pub estimates: Vec<ChannelEstimate>,
    pub detections: Vec<Detection>,
    /// per-iteration channel NMSE, when the truth was supplied
    pub nmse: Vec<f64>,
    pub ber: Vec<f64>,
}

/// Runs `iterations` passes; pass 1 is estimate, cancel, detect. Each later
/// pass subtracts `h *s x_hat` (hard decisions) from `y`, re-estimates,
/// re-cancels and re-detects.
pub fn turbo_iterate(
    y: &DDSignal,
    plan: &FramePlan,
    estimator: &ChannelEstimator,
    iterations: usize,
    truth: Option<&FilterTaps>,
    method: LmmseMethod,
) -> Result<TurboResult> {
    if iterations == 0 {
        return Err(Error::InvalidParameter(
            "need at least one iteration".into(),
        ));
    }
    let grid = *y.grid();
    let mut out = TurboResult {
        estimates: Vec::with_capacity(iterations),
        detections: Vec::with_capacity(iterations),
        nmse: Vec::new(),
        ber: Vec::with_capacity(iterations),
    };
    let mut sensing = y.clone();
    for it in 0..iterations {
        if it > 0 {
            let prev_est = out.estimates.last().expect("previous pass");
            let prev = out.detections.last().expect("previous pass");
            let x_hat = data_frame_signal(&prev.decisions, &grid)?;
            sensing = y.sub(&twisted_convolve(&prev_est.taps, &x_hat))?;
        }
        let est = estimator.estimate(&sensing, plan.pilot_energy)?;
        let y_data = estimator.cancel(y, &est, plan.pilot_energy)?;
        let v = interference_variance(&y_data, &est, plan.noise_variance);
        let det = lmmse_detect_with(&y_data, &est, v, method)?;
        if let Some(h) = truth {
            out.nmse.push(nmse(&est.taps, h)?);
        }
        out.ber.push(ber(&det.decisions, &plan.symbols)?);
        out.estimates.push(est);
        out.detections.push(det);
    }
    Ok(out)
}

/// Baseline with the pilot in its own subframe: estimate from `y_pilot`
/// (pilot only), detect from `y_data` (data only) with the thermal noise
/// variance.
pub fn separate_subframe_detect(
    y_pilot: &DDSignal,
    y_data: &DDSignal,
    pilot_energy: f64,
    noise_variance: f64,
    estimator: &ChannelEstimator,
    method: LmmseMethod,
) -> Result<(ChannelEstimate, Detection)> {
    let est = estimator.estimate(y_pilot, pilot_energy)?;
    let det = lmmse_detect_with(y_data, &est, noise_variance, method)?;
    Ok((est, det))
}
