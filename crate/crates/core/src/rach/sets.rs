use serde::{Deserialize, Serialize};

use crate::channel::{check_crystallization, doppler_reach};
use crate::dd::DDGrid;

/// On-grid delay and Doppler hypotheses: delays `k tau_p / M` for
/// `k = 0..=ceil(M tau_max / tau_p)`, Dopplers `l nu_p / N` for
/// `|l| <= ceil(N nu_max / nu_p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayDopplerSets {
    pub delay_bins: Vec<i64>,
    pub doppler_bins: Vec<i64>,
    delay_step: f64,
    doppler_step: f64,
}

impl DelayDopplerSets {
    pub fn new(grid: &DDGrid, tau_max: f64, nu_max: f64) -> Self {
        let k_max = check_crystallization(grid, tau_max, nu_max).k_max;
        let r = doppler_reach(grid, nu_max);
        Self {
            delay_bins: (0..=k_max).collect(),
            doppler_bins: (-r..=r).collect(),
            delay_step: grid.delay_step(),
            doppler_step: grid.doppler_step(),
        }
    }

    /// A single hypothesis at the origin.
    pub fn origin(grid: &DDGrid) -> Self {
        Self {
            delay_bins: vec![0],
            doppler_bins: vec![0],
            delay_step: grid.delay_step(),
            doppler_step: grid.doppler_step(),
        }
    }

    pub fn len(&self) -> usize {
        self.delay_bins.len() * self.doppler_bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Lattice bins `(k, l)` of hypothesis `i`, delay-major.
    pub fn bins(&self, i: usize) -> (i64, i64) {
        let nd = self.doppler_bins.len();
        (self.delay_bins[i / nd], self.doppler_bins[i % nd])
    }

    /// Physical `(tau, nu)` of hypothesis `i`.
    pub fn point(&self, i: usize) -> (f64, f64) {
        let (k, l) = self.bins(i);
        (k as f64 * self.delay_step, l as f64 * self.doppler_step)
    }

    pub fn delays(&self) -> Vec<f64> {
        self.delay_bins
            .iter()
            .map(|&k| k as f64 * self.delay_step)
            .collect()
    }

    pub fn dopplers(&self) -> Vec<f64> {
        self.doppler_bins
            .iter()
            .map(|&l| l as f64 * self.doppler_step)
            .collect()
    }
}
