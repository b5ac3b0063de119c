//! Observation matrix of delay-Doppler translated ZC preambles.

use num_complex::Complex64;
use rayon::prelude::*;

use super::sets::DelayDopplerSets;
use crate::channel::ChannelPath;
use crate::channel::{check_crystallization, PathResponder, PulseShapingFilter, TapWindow};
use crate::dd::{twisted_convolve, DDGrid, DDSignal, FilterTaps, Tap};
use crate::error::{Error, Result};
use crate::waveforms::ZcPilot;

/// `n x p` dictionary, `n = MN`, `p = (#roots) |S|`. Column `j |S| + i` is
/// `h_eff,i *s z_j` for the unit path at hypothesis `i`, normalized to unit
/// norm.
#[derive(Debug, Clone)]
pub struct ObservationMatrix {
    pub grid: DDGrid,
    pub roots: Vec<i64>,
    pub sets: DelayDopplerSets,
    /// column-major, each column k-major over the fundamental region
    data: Vec<Complex64>,
}

impl ObservationMatrix {
    pub fn rows(&self) -> usize {
        self.grid.mn()
    }

    pub fn cols(&self) -> usize {
        self.roots.len() * self.sets.len()
    }

    pub fn group_size(&self) -> usize {
        self.sets.len()
    }

    pub fn groups(&self) -> usize {
        self.roots.len()
    }

    pub fn column(&self, c: usize) -> &[Complex64] {
        let n = self.rows();
        &self.data[c * n..(c + 1) * n]
    }

    /// Column index to `(preamble j, hypothesis i)`.
    pub fn group_of(&self, c: usize) -> (usize, usize) {
        (c / self.sets.len(), c % self.sets.len())
    }

    /// `f = A^H y`.
    pub fn correlate(&self, y: &DDSignal) -> Result<Vec<Complex64>> {
        self.grid.check_same(y.grid())?;
        let yv = y.values();
        Ok((0..self.cols())
            .map(|c| {
                self.column(c)
                    .iter()
                    .zip(yv)
                    .map(|(a, b)| a.conj() * b)
                    .sum()
            })
            .collect())
    }
}

pub fn build_observation_matrix(
    roots: &[i64],
    grid: &DDGrid,
    filt: &PulseShapingFilter,
    tau_max: f64,
    nu_max: f64,
) -> Result<ObservationMatrix> {
    if !check_crystallization(grid, tau_max, nu_max).satisfied {
        return Err(Error::Crystallization(format!(
            "tau_max={tau_max} s, nu_max={nu_max} Hz do not fit the {}x{} lattice",
            grid.m(),
            grid.n()
        )));
    }
    let sets = DelayDopplerSets::new(grid, tau_max, nu_max);
    build_with_sets(
        roots,
        grid,
        filt,
        sets,
        TapWindow::for_spreads(grid, tau_max, nu_max),
    )
}

/// Dictionary over explicit hypotheses, with unit-path responses evaluated on
/// `window`.
pub fn build_with_sets(
    roots: &[i64],
    grid: &DDGrid,
    filt: &PulseShapingFilter,
    sets: DelayDopplerSets,
    window: TapWindow,
) -> Result<ObservationMatrix> {
    let mut seen = roots.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("duplicate preamble roots".into()));
    }
    let pilots: Vec<DDSignal> = roots
        .iter()
        .map(|&u| ZcPilot::new(*grid, u).map(|z| z.signal()))
        .collect::<Result<_>>()?;
    let responder = PathResponder::new(filt, grid, &window);
    let responses: Vec<FilterTaps> = (0..sets.len())
        .map(|i| {
            let (tau, nu) = sets.point(i);
            let mut acc = vec![Complex64::new(0.0, 0.0); window.len()];
            responder.accumulate(
                &ChannelPath {
                    gain: Complex64::new(1.0, 0.0),
                    delay: tau,
                    doppler: nu,
                },
                &mut acc,
            );
            FilterTaps::new(
                window
                    .points()
                    .zip(acc)
                    .filter(|(_, v)| v.norm_sqr() > 0.0)
                    .map(|((k, l), value)| Tap { k, l, value })
                    .collect(),
            )
        })
        .collect();
    let s = sets.len();
    let columns: Vec<Vec<Complex64>> = (0..roots.len() * s)
        .into_par_iter()
        .map(|c| {
            let col = twisted_convolve(&responses[c % s], &pilots[c / s]);
            let norm = col.energy().sqrt();
            col.values().iter().map(|v| v / norm).collect()
        })
        .collect();
    Ok(ObservationMatrix {
        grid: *grid,
        roots: roots.to_vec(),
        sets,
        data: columns.concat(),
    })
}
