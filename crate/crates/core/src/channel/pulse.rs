//! Root-raised-cosine pulse shaping in delay and Doppler.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::dd::{FilterTaps, Tap};
use crate::error::{Error, Result};

/// Relative level below which RRC tails are truncated.
pub const TAIL_FLOOR: f64 = 1e-4;

/// Integration points per lattice step for the effective-channel integrals.
pub const INTEGRATION_OVERSAMPLING: usize = 16;

/// Root-raised-cosine pulse with unit symbol spacing and roll-off `beta`.
///
/// `rrc(0) = 1 - beta + 4 beta / pi`; the pulse has unit energy per unit time
/// and `beta = 0` reduces to `sinc`.
pub fn rrc(t: f64, beta: f64) -> f64 {
    if t.abs() < 1e-12 {
        return 1.0 - beta + 4.0 * beta / PI;
    }
    if beta > 0.0 && ((4.0 * beta * t).abs() - 1.0).abs() < 1e-9 {
        let a = PI / (4.0 * beta);
        return beta / 2f64.sqrt() * ((1.0 + 2.0 / PI) * a.sin() + (1.0 - 2.0 / PI) * a.cos());
    }
    let num = (PI * t * (1.0 - beta)).sin() + 4.0 * beta * t * (PI * t * (1.0 + beta)).cos();
    let den = PI * t * (1.0 - (4.0 * beta * t).powi(2));
    num / den
}

/// Half-width beyond which `|rrc| < TAIL_FLOOR * rrc(0)`, from the envelope
/// `(1 + 4 beta |t|) / (pi |t| |1 - 16 beta^2 t^2|)`.
pub fn rrc_support(beta: f64) -> f64 {
    let floor = TAIL_FLOOR * rrc(0.0, beta);
    let mut t = 1.0f64.max(1.0 / (2.0 * beta.max(1e-9)));
    loop {
        let env = (1.0 + 4.0 * beta * t) / (PI * t * (16.0 * beta * beta * t * t - 1.0).abs());
        if env < floor && (16.0 * beta * beta * t * t > 2.0 || beta == 0.0) {
            return t.ceil();
        }
        t += 0.25;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterKind {
    RootRaisedCosine,
    /// Brick-wall limit: sinc pulses, evaluated in closed form.
    IdealSinc,
}

/// Transmit filter `w_tx(tau, nu) = sqrt(BT) w1(tau) w2(nu)` with an RRC of
/// bandwidth `B` in delay and an RRC of duration `T` in Doppler. The receive
/// filter is its matched filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseShapingFilter {
    pub kind: FilterKind,
    pub beta_delay: f64,
    pub beta_doppler: f64,
}

impl PulseShapingFilter {
    pub fn rrc(beta_delay: f64, beta_doppler: f64) -> Result<Self> {
        for b in [beta_delay, beta_doppler] {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::InvalidParameter(format!(
                    "roll-off must lie in [0, 1], got {b}"
                )));
            }
        }
        Ok(Self {
            kind: FilterKind::RootRaisedCosine,
            beta_delay,
            beta_doppler,
        })
    }

    pub fn ideal() -> Self {
        Self {
            kind: FilterKind::IdealSinc,
            beta_delay: 0.0,
            beta_doppler: 0.0,
        }
    }

    /// The transmit filter sampled on the information lattice,
    /// `w[k, l] = rrc(k) rrc(l)`, truncated at the tail floor.
    pub fn lattice_taps(&self) -> FilterTaps {
        let sk = rrc_support(self.beta_delay) as i64;
        let sl = rrc_support(self.beta_doppler) as i64;
        let wk: Vec<f64> = (-sk..=sk).map(|k| rrc(k as f64, self.beta_delay)).collect();
        let wl: Vec<f64> = (-sl..=sl)
            .map(|l| rrc(l as f64, self.beta_doppler))
            .collect();
        let floor = TAIL_FLOOR * wk[sk as usize].abs() * wl[sl as usize].abs();
        let mut taps = Vec::new();
        for (i, a) in wk.iter().enumerate() {
            for (j, b) in wl.iter().enumerate() {
                let v = a * b;
                if v.abs() >= floor {
                    taps.push(Tap {
                        k: i as i64 - sk,
                        l: j as i64 - sl,
                        value: Complex64::new(v, 0.0),
                    });
                }
            }
        }
        FilterTaps::new(taps)
    }
}

/// Samples of `rrc` on the integration grid `s_j = j / 16`.
#[derive(Debug, Clone)]
pub(crate) struct RrcGrid {
    pub beta: f64,
    /// grid index of the first sample, `-support * 16`
    pub first: i64,
    pub samples: Vec<f64>,
}

impl RrcGrid {
    pub fn new(beta: f64) -> Self {
        let q = INTEGRATION_OVERSAMPLING as i64;
        let half = rrc_support(beta) as i64 * q;
        let samples = (-half..=half)
            .map(|j| rrc(j as f64 / q as f64, beta))
            .collect();
        Self {
            beta,
            first: -half,
            samples,
        }
    }

    /// `rrc(j/16 - offset)` for grid indices `j` in `[lo, lo + count)`.
    pub fn shifted(&self, offset: f64, lo: i64, count: usize) -> Vec<f64> {
        let q = INTEGRATION_OVERSAMPLING as f64;
        let support = -(self.first as f64) / q;
        (0..count as i64)
            .map(|i| {
                let t = (lo + i) as f64 / q - offset;
                if t.abs() > support {
                    0.0
                } else {
                    rrc(t, self.beta)
                }
            })
            .collect()
    }
}

/// Reference evaluation of `G(x, eps) = int rrc(s) rrc(x - s) exp(-j 2 pi eps s) ds`
/// by the trapezoid rule on the 1/16 grid. Slow; used by tests and by
/// one-off computations.
pub fn rrc_correlation(x: f64, eps: f64, beta: f64) -> Complex64 {
    let grid = RrcGrid::new(beta);
    let q = INTEGRATION_OVERSAMPLING as f64;
    let support = -(grid.first as f64) / q;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &a) in grid.samples.iter().enumerate() {
        let s = (grid.first + i as i64) as f64 / q;
        if (x - s).abs() > support {
            continue;
        }
        acc += Complex64::from_polar(a * rrc(x - s, beta), -2.0 * PI * eps * s);
    }
    acc / q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rrc_reference_values() {
        assert!((rrc(0.0, 0.6) - (0.4 + 2.4 / PI)).abs() < 1e-14);
        // beta = 0 is a sinc
        assert!((rrc(0.5, 0.0) - 2.0 / PI).abs() < 1e-14);
        assert!(rrc(3.0, 0.0).abs() < 1e-15);
        // removable singularity at t = 1/(4 beta) is continuous
        let t0 = 1.0 / (4.0 * 0.6);
        assert!((rrc(t0, 0.6) - rrc(t0 + 1e-7, 0.6)).abs() < 1e-5);
    }

    #[test]
    fn rrc_is_unit_energy_and_nyquist_after_matching() {
        // G(n, 0) = rc(n): 1 at n = 0, ~0 at other integers
        let g0 = rrc_correlation(0.0, 0.0, 0.6);
        assert!((g0.re - 1.0).abs() < 2e-3, "{g0}");
        for n in 1..4 {
            assert!(rrc_correlation(n as f64, 0.0, 0.6).norm() < 2e-3);
        }
    }

    #[test]
    fn support_bound_holds() {
        for beta in [0.2, 0.6, 1.0] {
            let s = rrc_support(beta);
            let peak = rrc(0.0, beta);
            for i in 0..2000 {
                let t = s + i as f64 * 0.05;
                assert!(rrc(t, beta).abs() < TAIL_FLOOR * peak, "beta={beta} t={t}");
            }
        }
    }

    #[test]
    fn lattice_taps_are_separable_and_centered() {
        let f = PulseShapingFilter::rrc(0.6, 0.6).unwrap();
        let taps = f.lattice_taps();
        let c = taps.get(0, 0).re;
        assert!((c - rrc(0.0, 0.6).powi(2)).abs() < 1e-14);
        assert!((taps.get(2, -1).re - rrc(2.0, 0.6) * rrc(-1.0, 0.6)).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_rolloff() {
        assert!(PulseShapingFilter::rrc(1.2, 0.5).is_err());
        assert!(PulseShapingFilter::rrc(0.5, -0.1).is_err());
    }
}
