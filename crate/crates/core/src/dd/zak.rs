//! Discrete Zak transform between one critically sampled subframe of `MN`
//! time samples and the `M x N` delay-Doppler fundamental region.
//!
//! `X[k, l] = N^{-1/2} sum_p x[k + pM] xi_N^{-pl}` and its inverse. Both maps
//! are unitary.

use num_complex::Complex64;

use super::grid::DDGrid;
use super::signal::{DDSignal, TDSignal};
use crate::arith::RootTable;
use crate::error::{Error, Result};

pub fn zak_transform(td: &TDSignal, grid: &DDGrid) -> Result<DDSignal> {
    if td.oversampling() != 1 {
        return Err(Error::Dimension(format!(
            "Zak transform needs a critically sampled frame (Q = {})",
            td.oversampling()
        )));
    }
    zak_from_samples(td.samples(), grid)
}

/// Zak transform of raw samples; `samples.len()` must be `MN`.
pub fn zak_from_samples(samples: &[Complex64], grid: &DDGrid) -> Result<DDSignal> {
    let (m, n) = (grid.m(), grid.n());
    if samples.len() != m * n {
        return Err(Error::Dimension(format!(
            "expected {} samples, got {}",
            m * n,
            samples.len()
        )));
    }
    let roots = RootTable::new(n);
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = DDSignal::zeros(*grid);
    let vals = out.values_mut();
    for k in 0..m {
        for l in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..n {
                acc += samples[k + p * m] * roots.get(-((p * l) as i64));
            }
            vals[k * n + l] = acc * scale;
        }
    }
    Ok(out)
}

pub fn inverse_zak_transform(dd: &DDSignal) -> TDSignal {
    let grid = *dd.grid();
    let samples = inverse_zak_samples(dd);
    TDSignal::new(&grid, samples, 1).expect("length is MN by construction")
}

pub fn inverse_zak_samples(dd: &DDSignal) -> Vec<Complex64> {
    let grid = dd.grid();
    let (m, n) = (grid.m(), grid.n());
    let roots = RootTable::new(n);
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); m * n];
    for k in 0..m {
        for p in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += dd.get(k, l) * roots.get((p * l) as i64);
            }
            out[k + p * m] = acc * scale;
        }
    }
    out
}
