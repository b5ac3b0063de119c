//! One-Step Thresholding and the cross-ambiguity baseline.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::dictionary::ObservationMatrix;
use crate::dd::{inverse_zak_samples, DDSignal};
use crate::error::{Error, Result};
use crate::waveforms::ZcPilot;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OstMode {
    /// sum of `|f_i|^2` over each preamble's columns
    BlindGrouped,
    /// largest single `|f_i|^2` in each group
    BlindUngrouped,
    /// grouped, restricted to hypotheses whose delay bin is known
    OnGrid { delay_bins: Vec<i64> },
}

/// Indices of the `k` largest scores; ties go to the lower index.
pub fn top_k(scores: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > scores.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {k} of {} groups",
            scores.len()
        )));
    }
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx.truncate(k);
    idx.sort_unstable();
    Ok(idx)
}

/// Per-preamble OST scores from `f = A^H y`.
pub fn ost_scores(a: &ObservationMatrix, y: &DDSignal, mode: &OstMode) -> Result<Vec<f64>> {
    let f = a.correlate(y)?;
    let s = a.group_size();
    let keep: Vec<bool> = (0..s)
        .map(|i| match mode {
            OstMode::OnGrid { delay_bins } => delay_bins.contains(&a.sets.bins(i).0),
            _ => true,
        })
        .collect();
    Ok((0..a.groups())
        .map(|j| {
            let group = &f[j * s..(j + 1) * s];
            let energies = group
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(v, _)| v.norm_sqr());
            match mode {
                OstMode::BlindUngrouped => energies.fold(0.0, f64::max),
                _ => energies.sum(),
            }
        })
        .collect())
}

/// One-step thresholding, with top-K selection in place of the threshold.
pub fn ost_detect(
    a: &ObservationMatrix,
    y: &DDSignal,
    k: usize,
    mode: &OstMode,
) -> Result<Vec<usize>> {
    if k > a.groups() {
        return Err(Error::InvalidParameter(format!(
            "K={k} exceeds the {} preamble groups",
            a.groups()
        )));
    }
    top_k(&ost_scores(a, y, mode)?, k)
}

/// Largest `|A(y, z_j)[k, l]|` over all shifts, per preamble.
///
/// For a ZC preamble `z[n - k] = z[n] xi_MN^{u n k} c_k`, so each delay row
/// of the ambiguity is a cyclic Doppler shift of the spectrum of
/// `y[n] conj(z[n])` and one FFT covers every shift.
pub fn crossamb_scores(y: &DDSignal, preambles: &[ZcPilot]) -> Vec<f64> {
    let y_td = inverse_zak_samples(y);
    let mn = y_td.len();
    let fft = FftPlanner::new().plan_fft_forward(mn);
    let scale = 1.0 / (mn as f64).sqrt();
    preambles
        .iter()
        .map(|p| {
            let mut buf: Vec<Complex64> = p
                .sequence()
                .iter()
                .zip(&y_td)
                .map(|(z, v)| v * z.conj() * scale)
                .collect();
            fft.process(&mut buf);
            buf.iter().map(|v| v.norm()).fold(0.0, f64::max)
        })
        .collect()
}

pub fn crossamb_detect(y: &DDSignal, preambles: &[ZcPilot], k: usize) -> Result<Vec<usize>> {
    top_k(&crossamb_scores(y, preambles), k)
}
