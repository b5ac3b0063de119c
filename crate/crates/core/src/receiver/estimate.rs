//! Channel read-off from the cross-ambiguity of the received frame and the
//! spread pilot.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{check_crystallization, doppler_reach, TapWindow, TAP_MARGIN};
use crate::dd::{inverse_zak_samples, twisted_convolve, DDGrid, DDSignal, FilterTaps, Tap};
use crate::error::{Error, Result};
use crate::waveforms::{Pilot, RowEngine};

/// Default floor, relative to the largest estimated tap, below which taps
/// are zeroed.
pub const TAP_FLOOR: f64 = 1e-3;

/// Self-ambiguity magnitude above which a shift counts as support.
const SUPPORT_TOL: f64 = 1e-6;

/// Where taps are read off: `window` holds every estimated tap, `core` is the
/// nominal spread `k in [0, k_max]`, `|l| <= ceil(N nu_max / nu_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadoffRegion {
    pub window: TapWindow,
    pub core: TapWindow,
    pub floor: f64,
}

impl ReadoffRegion {
    pub fn for_spreads(grid: &DDGrid, tau_max: f64, nu_max: f64) -> Self {
        Self::with_margin(grid, tau_max, nu_max, TAP_MARGIN)
    }

    /// Read-off window with `margin` taps around the core instead of the
    /// default. Every estimated tap removes one dimension from the data after
    /// pilot cancellation, so a tighter window trades truncation error for
    /// less data lost to the first cancellation.
    pub fn with_margin(grid: &DDGrid, tau_max: f64, nu_max: f64, margin: i64) -> Self {
        let cr = check_crystallization(grid, tau_max, nu_max);
        let reach = doppler_reach(grid, nu_max);
        Self {
            window: TapWindow::for_spreads_with_margin(grid, tau_max, nu_max, margin),
            core: TapWindow::new(0, cr.k_max, -reach, reach),
            floor: TAP_FLOOR,
        }
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEstimate {
    pub taps: FilterTaps,
    pub window: TapWindow,
}

/// Checks that no nonzero translate of the pilot self-ambiguity lands inside
/// the read-off window when the channel occupies the core.
pub fn check_readoff(pilot: &DDSignal, region: &ReadoffRegion) -> Result<()> {
    let (w, c) = (&region.window, &region.core);
    let (dk_lo, dk_hi) = (w.k_lo - c.k_hi, w.k_hi - c.k_lo);
    let (dl_lo, dl_hi) = (w.l_lo - c.l_hi, w.l_hi - c.l_lo);
    let td = inverse_zak_samples(pilot);
    let engine = RowEngine::from_td(td.clone(), td);
    let mn = pilot.grid().mn() as i64;
    let peak = engine.row(0)[0].norm();
    for dk in dk_lo..=dk_hi {
        let row = engine.row(dk);
        for dl in dl_lo..=dl_hi {
            if dk.rem_euclid(mn) == 0 && dl.rem_euclid(mn) == 0 {
                continue;
            }
            if row[dl.rem_euclid(mn) as usize].norm() > SUPPORT_TOL * peak {
                return Err(Error::Crystallization(format!(
                    "pilot self-ambiguity is nonzero at shift ({dk}, {dl}), inside the read-off span"
                )));
            }
        }
    }
    Ok(())
}

/// Reusable read-off for one pilot and region.
#[derive(Debug, Clone)]
pub struct ChannelEstimator {
    pilot: DDSignal,
    pilot_td: Vec<Complex64>,
    region: ReadoffRegion,
}

impl ChannelEstimator {
    pub fn new(pilot: &Pilot, region: ReadoffRegion) -> Result<Self> {
        let signal = pilot.unit_signal();
        check_readoff(&signal, &region)?;
        Ok(Self {
            pilot_td: inverse_zak_samples(&signal),
            pilot: signal,
            region,
        })
    }

    pub fn region(&self) -> &ReadoffRegion {
        &self.region
    }

    /// Unit-energy pilot signal.
    pub fn pilot(&self) -> &DDSignal {
        &self.pilot
    }

    /// `h[k, l] = A(y, pilot)[k, l] / sqrt(E_p)` over the window, with the
    /// floor applied.
    pub fn estimate(&self, y: &DDSignal, pilot_energy: f64) -> Result<ChannelEstimate> {
        if pilot_energy.is_nan() || pilot_energy <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "pilot energy must be positive, got {pilot_energy}"
            )));
        }
        self.pilot.grid().check_same(y.grid())?;
        let w = self.region.window;
        let engine = RowEngine::from_td(inverse_zak_samples(y), self.pilot_td.clone());
        let mn = y.grid().mn() as i64;
        let scale = 1.0 / pilot_energy.sqrt();
        let mut taps = Vec::with_capacity(w.len());
        for k in w.k_lo..=w.k_hi {
            let row = engine.row(k);
            for l in w.l_lo..=w.l_hi {
                taps.push(Tap {
                    k,
                    l,
                    value: row[l.rem_euclid(mn) as usize] * scale,
                });
            }
        }
        let peak = taps.iter().map(|t| t.value.norm()).fold(0.0, f64::max);
        let cut = self.region.floor * peak;
        for t in &mut taps {
            if t.value.norm() < cut {
                t.value = Complex64::new(0.0, 0.0);
            }
        }
        Ok(ChannelEstimate {
            taps: FilterTaps::new(taps),
            window: w,
        })
    }

    /// `y - sqrt(E_p) (h *s pilot)`.
    pub fn cancel(
        &self,
        y: &DDSignal,
        est: &ChannelEstimate,
        pilot_energy: f64,
    ) -> Result<DDSignal> {
        cancel_pilot(y, est, &self.pilot, pilot_energy)
    }
}

pub fn estimate_channel(
    y: &DDSignal,
    pilot: &Pilot,
    pilot_energy: f64,
    region: &ReadoffRegion,
) -> Result<ChannelEstimate> {
    ChannelEstimator::new(pilot, *region)?.estimate(y, pilot_energy)
}

/// Removes the estimated received pilot; `pilot` is the unit-energy pilot.
pub fn cancel_pilot(
    y: &DDSignal,
    est: &ChannelEstimate,
    pilot: &DDSignal,
    pilot_energy: f64,
) -> Result<DDSignal> {
    let rx = twisted_convolve(&est.taps, pilot);
    let mut out = y.clone();
    out.axpy(Complex64::new(-pilot_energy.sqrt(), 0.0), &rx)?;
    Ok(out)
}
