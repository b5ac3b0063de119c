//! Monte Carlo runners. Trials fan out over the rayon pool; trial `t` uses
//! the generator seeded with `seed ^ t`, and one channel, data and noise draw
//! per trial is shared by every sweep point so curves are compared on common
//! random numbers.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::stats::Estimate;
use crate::channel::{add_noise, draw_veh_a_with, effective_taps, TapWindow};
use crate::dd::{papr, twisted_convolve, DDGrid, DDSignal, FilterTaps};
use crate::error::{Error, Result};
use crate::rach::{
    build_observation_matrix, crossamb_detect, draw_access_trial, draw_preamble_roots, ost_detect,
    AccessChannelModel, OstMode,
};
use crate::receiver::{
    ber, nmse, pilot_energy_for_pdr, separate_subframe_detect, turbo_iterate, ChannelEstimator,
    FramePlan, ReadoffRegion,
};
use crate::waveforms::{
    cross_ambiguity, data_frame_signal, random_qam4, td_realization, zc_dd_from_sequence,
    PilotKind, ZcPilot,
};
use crate::{rng_from_seed, trial_seed, SimRng};

/// Progress callback: `(completed, total)` trials.
pub type Progress<'a> = &'a (dyn Fn(usize, usize) + Sync);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmbiguityRow {
    pub k: usize,
    pub l: usize,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaprRow {
    pub pilot: PilotKind,
    pub papr_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NmseRow {
    pub pdr_db: f64,
    pub nmse_db: f64,
    pub pilot: PilotKind,
    pub nmse: f64,
    pub std_err: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BerScheme {
    /// superimposed pilot and data with turbo refinement
    Joint,
    /// pilot and data in separate subframes
    Separate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerRow {
    pub pdr_db: f64,
    pub ber: f64,
    pub iterations: usize,
    pub scheme: BerScheme,
    pub std_err: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Detector {
    /// grouped OST restricted to the true delay bins
    OnGrid,
    BlindGrouped,
    BlindUngrouped,
    CrossAmbiguity,
}

impl Detector {
    pub const ALL: [Detector; 4] = [
        Detector::OnGrid,
        Detector::BlindGrouped,
        Detector::BlindUngrouped,
        Detector::CrossAmbiguity,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RachRow {
    pub snr_db: f64,
    pub missed: f64,
    pub detector: Detector,
    pub std_err: f64,
    pub trials: usize,
}

/// Self-ambiguity for one configured root, cross-ambiguity for two. With
/// `nonzero_only`, self-ambiguity rows at or below the threshold are dropped.
pub fn run_ambiguity(cfg: &ExperimentConfig) -> Result<Vec<AmbiguityRow>> {
    let grid = cfg.grid()?;
    let roots = &cfg.ambiguity.roots;
    if roots.is_empty() || roots.len() > 2 {
        return Err(Error::Config(format!(
            "ambiguity.roots needs one or two entries, got {}",
            roots.len()
        )));
    }
    let signal = |u: i64| -> Result<DDSignal> {
        if cfg.ambiguity.from_sequence {
            Ok(zc_dd_from_sequence(&grid, u))
        } else {
            Ok(ZcPilot::new(grid, u)?.signal())
        }
    };
    let x = signal(roots[0])?;
    let y = match roots.get(1) {
        Some(&w) => signal(w)?,
        None => x.clone(),
    };
    let drop_zeros = cfg.ambiguity.nonzero_only && roots.len() == 1;
    let map = cross_ambiguity(&x, &y)?;
    let s = map.size();
    Ok(map
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !drop_zeros || v.norm() > cfg.ambiguity.threshold)
        .map(|(i, v)| AmbiguityRow {
            k: i / s,
            l: i % s,
            magnitude: v.norm(),
        })
        .collect())
}

/// PAPR of each configured pilot after transmit shaping. The ZC pilot uses
/// `papr.root`.
pub fn run_papr(cfg: &ExperimentConfig) -> Result<Vec<PaprRow>> {
    let filter = cfg.filter()?;
    let mut local = cfg.clone();
    local.pilot.root = cfg.papr.root;
    cfg.papr
        .kinds
        .iter()
        .map(|&kind| {
            let x = local.pilot(kind)?.unit_signal();
            let td = td_realization(&x, &filter, cfg.papr.oversampling)?;
            Ok(PaprRow {
                pilot: kind,
                papr_db: papr(&td)?,
            })
        })
        .collect()
}

/// Per-DD-sample noise variance for the configured data SNR.
fn data_noise_variance(cfg: &ExperimentConfig) -> f64 {
    crate::receiver::SYMBOL_ENERGY / 10f64.powf(cfg.receiver.data_snr_db / 10.0)
}

fn region(cfg: &ExperimentConfig, grid: &DDGrid) -> ReadoffRegion {
    let (tau, nu) = (cfg.channel.tau_max(), cfg.channel.nu_max);
    ReadoffRegion::with_margin(grid, tau, nu, cfg.receiver.readoff_margin)
        .with_floor(cfg.receiver.tap_floor)
}

fn channel_window(cfg: &ExperimentConfig, grid: &DDGrid) -> TapWindow {
    TapWindow::for_spreads(grid, cfg.channel.tau_max(), cfg.channel.nu_max)
}

/// One trial's channel, data and noise, shared by every sweep point.
struct LinkDraw {
    /// effective channel on the full tap window; also the NMSE reference
    channel: FilterTaps,
    symbols: Vec<Complex64>,
    received_data: DDSignal,
    noise: DDSignal,
}

fn draw_link(
    cfg: &ExperimentConfig,
    grid: &DDGrid,
    window: &TapWindow,
    rng: &mut SimRng,
) -> Result<LinkDraw> {
    let filt = cfg.filter()?;
    let phy = draw_veh_a_with(rng, cfg.channel.nu_max);
    let channel = effective_taps(&phy.paths, &filt, grid, window);
    let symbols = random_qam4(rng, grid.mn());
    let received_data = twisted_convolve(&channel, &data_frame_signal(&symbols, grid)?);
    let mut noise = DDSignal::zeros(*grid);
    add_noise(&mut noise, data_noise_variance(cfg), rng)?;
    Ok(LinkDraw {
        channel,
        symbols,
        received_data,
        noise,
    })
}

/// Runs `trials` independent trials in parallel, reporting progress.
fn parallel_trials<T: Send>(
    cfg: &ExperimentConfig,
    progress: Progress<'_>,
    f: impl Fn(&mut SimRng) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let done = AtomicUsize::new(0);
    let total = cfg.trials;
    (0..total as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_from_seed(trial_seed(cfg.seed, t));
            let out = f(&mut rng);
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
            out
        })
        .collect()
}

fn require_trials(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be >= 1".into()));
    }
    Ok(())
}

/// Channel-estimation NMSE against the pilot-to-data ratio for each
/// configured pilot kind. The NMSE in dB is that of the trial mean.
pub fn run_nmse(cfg: &ExperimentConfig, progress: Progress<'_>) -> Result<Vec<NmseRow>> {
    require_trials(cfg)?;
    let grid = cfg.grid()?;
    let region = region(cfg, &grid);
    let window = channel_window(cfg, &grid);
    let kinds = &cfg.pilot.kinds;
    let estimators: Vec<ChannelEstimator> = kinds
        .iter()
        .map(|&k| ChannelEstimator::new(&cfg.pilot(k)?, region))
        .collect::<Result<_>>()?;
    let pdrs = &cfg.receiver.pdr_db;
    // per trial: [kind][pdr]
    let samples = parallel_trials(cfg, progress, |rng| {
        let link = draw_link(cfg, &grid, &window, rng)?;
        let base = link.received_data.add(&link.noise)?;
        estimators
            .iter()
            .map(|est| {
                let hp = twisted_convolve(&link.channel, est.pilot());
                pdrs.iter()
                    .map(|&pdr| {
                        let ep = pilot_energy_for_pdr(&grid, pdr);
                        let mut y = base.clone();
                        y.axpy(Complex64::new(ep.sqrt(), 0.0), &hp)?;
                        nmse(&est.estimate(&y, ep)?.taps, &link.channel)
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::new();
    for (ki, &kind) in kinds.iter().enumerate() {
        for (pi, &pdr) in pdrs.iter().enumerate() {
            let xs: Vec<f64> = samples.iter().map(|s| s[ki][pi]).collect();
            let e = Estimate::from_samples(&xs);
            rows.push(NmseRow {
                pdr_db: pdr,
                nmse_db: 10.0 * e.mean.log10(),
                pilot: kind,
                nmse: e.mean,
                std_err: e.std_err,
                trials: e.count,
            });
        }
    }
    Ok(rows)
}

/// Uncoded 4-QAM BER against the pilot-to-data ratio, after each configured
/// number of turbo iterations, plus the separate-subframe baseline. Uses the
/// first configured pilot kind.
pub fn run_ber(cfg: &ExperimentConfig, progress: Progress<'_>) -> Result<Vec<BerRow>> {
    require_trials(cfg)?;
    let grid = cfg.grid()?;
    let region = region(cfg, &grid);
    let window = channel_window(cfg, &grid);
    let kind = *cfg
        .pilot
        .kinds
        .first()
        .ok_or_else(|| Error::Config("pilot.kinds is empty".into()))?;
    let pilot = cfg.pilot(kind)?;
    let estimator = ChannelEstimator::new(&pilot, region)?;
    let iters = &cfg.receiver.turbo_iterations;
    let max_iter = iters.iter().copied().max().unwrap_or(1);
    let noise_var = data_noise_variance(cfg);
    let method = cfg.receiver.detector;
    let pdrs = &cfg.receiver.pdr_db;
    let baseline = cfg.receiver.separate_baseline;
    // per trial: [pdr] -> (ber per iteration, baseline ber)
    let samples = parallel_trials(cfg, progress, |rng| {
        let link = draw_link(cfg, &grid, &window, rng)?;
        let hp = twisted_convolve(&link.channel, estimator.pilot());
        let base = link.received_data.add(&link.noise)?;
        let mut pilot_noise = DDSignal::zeros(grid);
        if baseline {
            add_noise(&mut pilot_noise, noise_var, rng)?;
        }
        pdrs.iter()
            .map(|&pdr| {
                let ep = pilot_energy_for_pdr(&grid, pdr);
                let gain = Complex64::new(ep.sqrt(), 0.0);
                let mut y = base.clone();
                y.axpy(gain, &hp)?;
                let plan = FramePlan {
                    pilot,
                    pilot_energy: ep,
                    symbols: link.symbols.clone(),
                    noise_variance: noise_var,
                };
                let turbo = turbo_iterate(&y, &plan, &estimator, max_iter, None, method)?;
                let sep = if baseline {
                    let mut yp = pilot_noise.clone();
                    yp.axpy(gain, &hp)?;
                    let (_, det) =
                        separate_subframe_detect(&yp, &base, ep, noise_var, &estimator, method)?;
                    ber(&det.decisions, &link.symbols)?
                } else {
                    f64::NAN
                };
                Ok((turbo.ber, sep))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::new();
    for (pi, &pdr) in pdrs.iter().enumerate() {
        for &it in iters {
            let xs: Vec<f64> = samples.iter().map(|s| s[pi].0[it - 1]).collect();
            let e = Estimate::from_samples(&xs);
            rows.push(BerRow {
                pdr_db: pdr,
                ber: e.mean,
                iterations: it,
                scheme: BerScheme::Joint,
                std_err: e.std_err,
                trials: e.count,
            });
        }
        if baseline {
            let xs: Vec<f64> = samples.iter().map(|s| s[pi].1).collect();
            let e = Estimate::from_samples(&xs);
            rows.push(BerRow {
                pdr_db: pdr,
                ber: e.mean,
                iterations: 1,
                scheme: BerScheme::Separate,
                std_err: e.std_err,
                trials: e.count,
            });
        }
    }
    Ok(rows)
}

/// Preamble roots for the access runs: the configured list, or a seeded draw.
pub fn preamble_roots(cfg: &ExperimentConfig) -> Result<Vec<i64>> {
    let grid = cfg.grid()?;
    if cfg.rach.roots.is_empty() {
        draw_preamble_roots(&grid, cfg.rach.preambles, cfg.rach.root_seed)
    } else {
        Ok(cfg.rach.roots.clone())
    }
}

/// Missed-detection probability `1 - P_d` against per-user SNR for each
/// detector. `P_d` is the fraction of active users whose preamble is among
/// the `K` detected.
pub fn run_rach(cfg: &ExperimentConfig, progress: Progress<'_>) -> Result<Vec<RachRow>> {
    require_trials(cfg)?;
    let grid = cfg.grid()?;
    let filt = cfg.filter()?;
    let roots = preamble_roots(cfg)?;
    let preambles: Vec<ZcPilot> = roots
        .iter()
        .map(|&u| ZcPilot::new(grid, u))
        .collect::<Result<_>>()?;
    let k = cfg.rach.active_users;
    if k > preambles.len() {
        return Err(Error::Config(format!(
            "{k} active users but only {} preambles",
            preambles.len()
        )));
    }
    let a = build_observation_matrix(
        &roots,
        &grid,
        &filt,
        cfg.channel.tau_max(),
        cfg.channel.nu_max,
    )?;
    let model = AccessChannelModel {
        nu_max: cfg.channel.nu_max,
        delay_jitter: cfg.channel.delay_jitter,
    };
    let snrs = &cfg.rach.snr_db;
    let delay_step = grid.delay_step();
    // per trial: [snr][detector]
    let samples = parallel_trials(cfg, progress, |rng| {
        let trial = draw_access_trial(k, &preambles, &grid, &filt, &model, rng)?;
        let mut bins: Vec<i64> = trial
            .channels
            .iter()
            .flat_map(|c| {
                c.paths
                    .iter()
                    .map(|p| (p.delay / delay_step).round() as i64)
            })
            .collect();
        bins.sort_unstable();
        bins.dedup();
        let on_grid = OstMode::OnGrid { delay_bins: bins };
        snrs.iter()
            .map(|&snr| {
                let y = trial.observe(snr, rng)?;
                Detector::ALL
                    .iter()
                    .map(|d| {
                        let found = match d {
                            Detector::OnGrid => ost_detect(&a, &y, k, &on_grid)?,
                            Detector::BlindGrouped => {
                                ost_detect(&a, &y, k, &OstMode::BlindGrouped)?
                            }
                            Detector::BlindUngrouped => {
                                ost_detect(&a, &y, k, &OstMode::BlindUngrouped)?
                            }
                            Detector::CrossAmbiguity => crossamb_detect(&y, &preambles, k)?,
                        };
                        Ok(missed_fraction(&trial.active, &found))
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::new();
    for (si, &snr) in snrs.iter().enumerate() {
        for (di, &d) in Detector::ALL.iter().enumerate() {
            let xs: Vec<f64> = samples.iter().map(|s| s[si][di]).collect();
            let e = Estimate::from_samples(&xs);
            rows.push(RachRow {
                snr_db: snr,
                missed: e.mean,
                detector: d,
                std_err: e.std_err,
                trials: e.count,
            });
        }
    }
    Ok(rows)
}

/// Fraction of `active` missing from `found`; zero when nobody is active.
fn missed_fraction(active: &[usize], found: &[usize]) -> f64 {
    if active.is_empty() {
        return 0.0;
    }
    let missed = active.iter().filter(|a| !found.contains(a)).count();
    missed as f64 / active.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missed_fraction_cases() {
        assert_eq!(missed_fraction(&[], &[]), 0.0);
        assert_eq!(missed_fraction(&[1, 4], &[1, 4]), 0.0);
        assert_eq!(missed_fraction(&[1, 4], &[1, 2]), 0.5);
    }
}
