//! Crystallization condition on the delay and Doppler spreads.

use serde::{Deserialize, Serialize};

use crate::dd::DDGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crystallization {
    pub k_max: i64,
    pub l_max: i64,
    pub satisfied: bool,
}

/// Ceiling that ignores float noise around exact integers.
pub(crate) fn ceil_tol(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as i64
    } else {
        x.ceil() as i64
    }
}

/// `k_max = ceil(M tau_max / tau_p)`, `l_max = ceil(2 N nu_max / nu_p)`;
/// satisfied when `k_max < M` and `l_max < N`.
pub fn check_crystallization(grid: &DDGrid, tau_max: f64, nu_max: f64) -> Crystallization {
    let k_max = ceil_tol(grid.m() as f64 * tau_max / grid.delay_period());
    let l_max = ceil_tol(2.0 * grid.n() as f64 * nu_max / grid.doppler_period());
    Crystallization {
        k_max,
        l_max,
        satisfied: k_max < grid.m() as i64 && l_max < grid.n() as i64,
    }
}

/// `ceil(N nu_max / nu_p)`: the one-sided Doppler reach in lattice bins.
pub fn doppler_reach(grid: &DDGrid, nu_max: f64) -> i64 {
    ceil_tol(grid.n() as f64 * nu_max / grid.doppler_period())
}
