//! Discrete self- and cross-ambiguity:
//! `A[k, l] = sum_{k', l'} x[k', l'] conj(y[k' - k, l' - l]) xi_MN^{-l (k' - k)}`.
//!
//! The full surface is computed through the time domain. With
//! `(T_{k,l} y)_td[n] = y_td[n - k] xi_MN^{l (n - k)}` the Zak transform maps
//! the DD translate to this TD shift-and-modulate, so
//! `A[k, l] = xi_MN^{l k} sum_n x_td[n] conj(y_td[n - k]) exp(-j 2 pi l n / MN)`:
//! one length-`MN` FFT per delay shift.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::arith::RootTable;
use crate::dd::{inverse_zak_samples, DDGrid, DDSignal};
use crate::error::Result;

/// Ambiguity surface over all shifts `k, l` in `[0, MN)`, stored k-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguityMap {
    grid: DDGrid,
    values: Vec<Complex64>,
}

impl AmbiguityMap {
    pub fn grid(&self) -> &DDGrid {
        &self.grid
    }

    /// Side length `MN` of the shift square.
    pub fn size(&self) -> usize {
        self.grid.mn()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at any integer shift; the surface is `MN`-periodic in both axes.
    pub fn get(&self, k: i64, l: i64) -> Complex64 {
        let s = self.size() as i64;
        self.values[(k.rem_euclid(s) * s + l.rem_euclid(s)) as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Shifts with `|A| > threshold`, in k-major order.
    pub fn support(&self, threshold: f64) -> Vec<(usize, usize)> {
        let s = self.size();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > threshold)
            .map(|(i, _)| (i / s, i % s))
            .collect()
    }
}

/// Ambiguity at one shift, straight from the definition.
pub fn ambiguity_at(x: &DDSignal, y: &DDSignal, k: i64, l: i64) -> Complex64 {
    let g = x.grid();
    let (m, n) = (g.m() as i64, g.n() as i64);
    let roots = RootTable::new(g.mn());
    let mut acc = Complex64::new(0.0, 0.0);
    for kp in 0..m {
        for lp in 0..n {
            let xv = x.get(kp as usize, lp as usize);
            if xv == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += xv * y.at(kp - k, lp - l).conj() * roots.get(-l * (kp - k));
        }
    }
    acc
}

/// Precomputed TD representations for repeated row evaluations.
pub(crate) struct RowEngine {
    mn: usize,
    x_td: Vec<Complex64>,
    y_td: Vec<Complex64>,
    roots: RootTable,
    fft: Arc<dyn Fft<f64>>,
}

impl RowEngine {
    pub fn new(x: &DDSignal, y: &DDSignal) -> Result<Self> {
        x.grid().check_same(y.grid())?;
        Ok(Self::from_td(
            inverse_zak_samples(x),
            inverse_zak_samples(y),
        ))
    }

    pub fn from_td(x_td: Vec<Complex64>, y_td: Vec<Complex64>) -> Self {
        let mn = x_td.len();
        let fft = FftPlanner::new().plan_fft_forward(mn);
        Self {
            mn,
            x_td,
            y_td,
            roots: RootTable::new(mn),
            fft,
        }
    }

    /// `A[k, l]` for every `l` in `[0, MN)`.
    pub fn row(&self, k: i64) -> Vec<Complex64> {
        let mn = self.mn as i64;
        let mut buf: Vec<Complex64> = (0..mn)
            .map(|n| self.x_td[n as usize] * self.y_td[(n - k).rem_euclid(mn) as usize].conj())
            .collect();
        self.fft.process(&mut buf);
        for (l, v) in buf.iter_mut().enumerate() {
            *v *= self.roots.get(l as i64 * k);
        }
        buf
    }
}

/// Full cross-ambiguity surface of `x` against `y`.
pub fn cross_ambiguity(x: &DDSignal, y: &DDSignal) -> Result<AmbiguityMap> {
    let engine = RowEngine::new(x, y)?;
    let mn = x.grid().mn();
    let rows: Vec<Vec<Complex64>> = (0..mn as i64)
        .into_par_iter()
        .map(|k| engine.row(k))
        .collect();
    Ok(AmbiguityMap {
        grid: *x.grid(),
        values: rows.concat(),
    })
}

pub fn self_ambiguity(x: &DDSignal) -> AmbiguityMap {
    cross_ambiguity(x, x).expect("same grid")
}

/// Cross-ambiguity restricted to the delay shifts in `ks`; each returned row
/// covers all `MN` Doppler shifts.
pub fn ambiguity_rows(x: &DDSignal, y: &DDSignal, ks: &[i64]) -> Result<Vec<Vec<Complex64>>> {
    let engine = RowEngine::new(x, y)?;
    Ok(ks.iter().map(|&k| engine.row(k)).collect())
}
