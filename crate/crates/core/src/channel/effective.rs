//! The effective channel `w_rx *s h_phy *s w_tx` sampled on the information
//! lattice.
//!
//! For a path `(h, tau, nu)` and separable RRC filters the continuous twisted
//! convolution factors into a delay integral and a Doppler integral:
//!
//! `h_eff[k, l] = h exp(j 2 pi nu (k/B - tau)) G_d(k - B tau, nu / B) G_v(l - T nu, -k / MN)`
//!
//! with `G(x, eps) = int rrc(s) rrc(x - s) exp(-j 2 pi eps s) ds`, evaluated
//! by the trapezoid rule on a 16x oversampled grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::crystal::{check_crystallization, doppler_reach};
use super::pulse::{FilterKind, PulseShapingFilter, RrcGrid, INTEGRATION_OVERSAMPLING};
use super::veh_a::{ChannelPath, PhysicalChannel};
use crate::dd::{DDGrid, FilterTaps, Tap};

/// Tap margin kept around the nominal spread on every side.
pub const TAP_MARGIN: i64 = 4;

/// Rectangular block of lattice offsets, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapWindow {
    pub k_lo: i64,
    pub k_hi: i64,
    pub l_lo: i64,
    pub l_hi: i64,
}

impl TapWindow {
    pub fn new(k_lo: i64, k_hi: i64, l_lo: i64, l_hi: i64) -> Self {
        Self {
            k_lo,
            k_hi,
            l_lo,
            l_hi,
        }
    }

    /// `k in [-4, k_max + 4]`, `l in [-r - 4, r + 4]` where
    /// `r = ceil(N nu_max / nu_p)`, clipped to one period in each axis.
    pub fn for_spreads(grid: &DDGrid, tau_max: f64, nu_max: f64) -> Self {
        Self::for_spreads_with_margin(grid, tau_max, nu_max, TAP_MARGIN)
    }

    /// As [`TapWindow::for_spreads`] with `margin` in place of the default 4.
    pub fn for_spreads_with_margin(grid: &DDGrid, tau_max: f64, nu_max: f64, margin: i64) -> Self {
        let cr = check_crystallization(grid, tau_max, nu_max);
        let reach = doppler_reach(grid, nu_max);
        let (m, n) = (grid.m() as i64, grid.n() as i64);
        let k_lo = -margin;
        let k_hi = (cr.k_max + margin).min(k_lo + m - 1);
        let l_half = (n - 1) / 2;
        let l_lo = (-reach - margin).max(-l_half);
        let l_hi = (reach + margin).min(n - 1 + l_lo);
        Self::new(k_lo, k_hi, l_lo, l_hi)
    }

    pub fn grown(&self, by: i64) -> Self {
        Self::new(
            self.k_lo - by,
            self.k_hi + by,
            self.l_lo - by,
            self.l_hi + by,
        )
    }

    pub fn contains(&self, k: i64, l: i64) -> bool {
        (self.k_lo..=self.k_hi).contains(&k) && (self.l_lo..=self.l_hi).contains(&l)
    }

    pub fn k_count(&self) -> usize {
        (self.k_hi - self.k_lo + 1).max(0) as usize
    }

    pub fn l_count(&self) -> usize {
        (self.l_hi - self.l_lo + 1).max(0) as usize
    }

    pub fn len(&self) -> usize {
        self.k_count() * self.l_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `(k, l)` in k-major order.
    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.k_lo..=self.k_hi).flat_map(move |k| (self.l_lo..=self.l_hi).map(move |l| (k, l)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveChannel {
    pub taps: FilterTaps,
    pub k_max: i64,
    pub l_max: i64,
    pub window: TapWindow,
}

/// Effective channel on the default window for the channel's spreads.
pub fn effective_channel(
    phy: &PhysicalChannel,
    filt: &PulseShapingFilter,
    grid: &DDGrid,
) -> EffectiveChannel {
    let window = TapWindow::for_spreads(grid, phy.tau_max, phy.nu_max);
    let cr = check_crystallization(grid, phy.tau_max, phy.nu_max);
    EffectiveChannel {
        taps: effective_taps(&phy.paths, filt, grid, &window),
        k_max: cr.k_max,
        l_max: cr.l_max,
        window,
    }
}

/// Effective taps of a set of paths on an explicit window. Returns an empty
/// tap list when there are no paths.
pub fn effective_taps(
    paths: &[ChannelPath],
    filt: &PulseShapingFilter,
    grid: &DDGrid,
    window: &TapWindow,
) -> FilterTaps {
    if paths.is_empty() {
        return FilterTaps::default();
    }
    let resp = PathResponder::new(filt, grid, window);
    let mut acc = vec![Complex64::new(0.0, 0.0); window.len()];
    for p in paths {
        resp.accumulate(p, &mut acc);
    }
    FilterTaps::new(
        window
            .points()
            .zip(acc)
            .map(|((k, l), value)| Tap { k, l, value })
            .collect(),
    )
}

/// Fraction of the effective-channel energy that falls outside `window`,
/// measured against a window grown by `extra` on every side.
pub fn discarded_energy_fraction(
    paths: &[ChannelPath],
    filt: &PulseShapingFilter,
    grid: &DDGrid,
    window: &TapWindow,
    extra: i64,
) -> f64 {
    let wide = window.grown(extra);
    let taps = effective_taps(paths, filt, grid, &wide);
    let total = taps.energy();
    if total == 0.0 {
        return 0.0;
    }
    let outside: f64 = taps
        .taps()
        .iter()
        .filter(|t| !window.contains(t.k, t.l))
        .map(|t| t.value.norm_sqr())
        .sum();
    outside / total
}

/// Evaluates single-path responses on a fixed window, sharing the
/// path-independent integration weights.
pub(crate) struct PathResponder {
    kind: FilterKind,
    window: TapWindow,
    bandwidth: f64,
    duration: f64,
    delay_grid: Option<RrcGrid>,
    doppler_grid: Option<RrcGrid>,
    /// `rrc(s_j) exp(+j 2 pi k s_j / MN)` per window delay index
    doppler_weights: Vec<Vec<Complex64>>,
}

impl PathResponder {
    pub fn new(filt: &PulseShapingFilter, grid: &DDGrid, window: &TapWindow) -> Self {
        let mut out = Self {
            kind: filt.kind,
            window: *window,
            bandwidth: grid.bandwidth(),
            duration: grid.duration(),
            delay_grid: None,
            doppler_grid: None,
            doppler_weights: Vec::new(),
        };
        if filt.kind == FilterKind::RootRaisedCosine {
            let dg = RrcGrid::new(filt.beta_delay);
            let vg = RrcGrid::new(filt.beta_doppler);
            let q = INTEGRATION_OVERSAMPLING as f64;
            let mn = grid.mn() as f64;
            out.doppler_weights = (window.k_lo..=window.k_hi)
                .map(|k| {
                    vg.samples
                        .iter()
                        .enumerate()
                        .map(|(i, &r)| {
                            let s = (vg.first + i as i64) as f64 / q;
                            Complex64::from_polar(r, 2.0 * PI * k as f64 * s / mn)
                        })
                        .collect()
                })
                .collect();
            out.delay_grid = Some(dg);
            out.doppler_grid = Some(vg);
        }
        out
    }

    /// Adds the response of `path` to `acc` (window points, k-major).
    pub fn accumulate(&self, path: &ChannelPath, acc: &mut [Complex64]) {
        let d = path.delay * self.bandwidth;
        let e = path.doppler * self.duration;
        match self.kind {
            FilterKind::RootRaisedCosine => self.accumulate_rrc(path, d, e, acc),
            FilterKind::IdealSinc => self.accumulate_sinc(path, d, e, acc),
        }
    }

    /// Brick-wall limit with the `O(nu / B)` band shift neglected:
    /// `h exp(j 2 pi nu (k/B - tau)) sinc(k - d) sinc(l - e)`.
    fn accumulate_sinc(&self, path: &ChannelPath, d: f64, e: f64, acc: &mut [Complex64]) {
        let w = &self.window;
        let lc = w.l_count();
        for (ki, k) in (w.k_lo..=w.k_hi).enumerate() {
            let pre = path.gain * self.path_phase(path, k) * sinc(k as f64 - d);
            for (li, l) in (w.l_lo..=w.l_hi).enumerate() {
                acc[ki * lc + li] += pre * sinc(l as f64 - e);
            }
        }
    }

    fn path_phase(&self, path: &ChannelPath, k: i64) -> Complex64 {
        Complex64::from_polar(
            1.0,
            2.0 * PI * path.doppler * (k as f64 / self.bandwidth - path.delay),
        )
    }

    fn accumulate_rrc(&self, path: &ChannelPath, d: f64, e: f64, acc: &mut [Complex64]) {
        let w = &self.window;
        let dg = self.delay_grid.as_ref().expect("rrc grids");
        let vg = self.doppler_grid.as_ref().expect("rrc grids");
        let q = INTEGRATION_OVERSAMPLING as i64;
        let qf = q as f64;
        let eps = path.doppler / self.bandwidth;

        // delay factor: G_d(k - d, eps) = sum_j a_j exp(-j 2 pi eps s_j) f[16k - j] / 16
        let jd = -dg.first;
        let f_lo = q * w.k_lo - jd;
        let f = dg.shifted(d, f_lo, (q * (w.k_hi - w.k_lo) + 2 * jd + 1) as usize);
        let a: Vec<Complex64> = dg
            .samples
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let s = (dg.first + i as i64) as f64 / qf;
                Complex64::from_polar(r, -2.0 * PI * eps * s)
            })
            .collect();
        let gd: Vec<Complex64> = (w.k_lo..=w.k_hi)
            .map(|k| {
                let mut sum = Complex64::new(0.0, 0.0);
                for (i, aj) in a.iter().enumerate() {
                    let j = dg.first + i as i64;
                    sum += aj * f[(q * k - j - f_lo) as usize];
                }
                sum / qf
            })
            .collect();

        // Doppler factor: G_v(l - e, -k / MN)
        let jv = -vg.first;
        let g_lo = q * w.l_lo - jv;
        let g = vg.shifted(e, g_lo, (q * (w.l_hi - w.l_lo) + 2 * jv + 1) as usize);
        let lc = w.l_count();
        for (ki, k) in (w.k_lo..=w.k_hi).enumerate() {
            let pre = path.gain * self.path_phase(path, k) * gd[ki];
            let weights = &self.doppler_weights[ki];
            for (li, l) in (w.l_lo..=w.l_hi).enumerate() {
                let base = q * l - g_lo;
                let mut sum = Complex64::new(0.0, 0.0);
                for (i, bj) in weights.iter().enumerate() {
                    let j = vg.first + i as i64;
                    sum += bj * g[(base - j) as usize];
                }
                acc[ki * lc + li] += pre * sum / qf;
            }
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}
