//! The ten acceptance criteria as functions returning a one-line verdict.

use num_complex::Complex64;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use zakzc_core::channel::{check_crystallization, PulseShapingFilter, TapWindow, VEH_A_MAX_DELAY};
use zakzc_core::dd::{phase_aligned_max_diff, twisted_convolve, DDGrid, DDSignal, FilterTaps};
use zakzc_core::experiment::{
    run_ber, run_nmse, run_papr, run_rach, BerRow, BerScheme, Detector, ExperimentConfig, NmseRow,
    Preset, RachRow,
};
use zakzc_core::rach::{build_with_sets, ost_detect, DelayDopplerSets, OstMode};
use zakzc_core::waveforms::{
    cross_ambiguity, gauss_sum_magnitude, self_ambiguity, zc_dd_from_sequence, ChirpPilot,
    PilotKind, ZcPilot,
};

use super::props;

#[derive(Debug, Clone)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn grid(m: usize, n: usize) -> DDGrid {
    DDGrid::new(m, n, 30e3).unwrap()
}

fn quiet(_: usize, _: usize) {}

/// Self-ambiguity of the u=11 and u=23 pilots at M=31, N=37 over all shifts.
pub fn zc_line_support() -> Verdict {
    let g = grid(31, 37);
    let mn = g.mn() as i64;
    let mut on_dev = 0.0f64;
    let mut off_max = 0.0f64;
    let mut on_count = 0;
    for u in [11i64, 23] {
        let a = self_ambiguity(&ZcPilot::new(g, u).unwrap().signal());
        for k in 0..mn {
            for l in 0..mn {
                let v = a.get(k, l).norm();
                if (l + u * k).rem_euclid(mn) == 0 {
                    on_dev = on_dev.max((v - 1.0).abs());
                    on_count += 1;
                } else {
                    off_max = off_max.max(v);
                }
            }
        }
    }
    Verdict::new(
        on_count == 2 * mn && on_dev <= 1e-9 && off_max < 1e-9,
        format!("{on_count} line points, max ||A|-1| on line {on_dev:.1e}, max |A| off line {off_max:.1e}"),
    )
}

/// Worst deviation of `|A_{u,w}|` from `1/sqrt(MN)` and the worst relative
/// excess of its maximum over that level, for raw-sequence ZC pilots.
pub fn cross_flatness(m: usize, n: usize, u: i64, w: i64) -> (f64, f64) {
    let g = grid(m, n);
    let a = cross_ambiguity(&zc_dd_from_sequence(&g, u), &zc_dd_from_sequence(&g, w)).unwrap();
    let level = 1.0 / (g.mn() as f64).sqrt();
    let dev = a
        .values()
        .iter()
        .map(|v| (v.norm() - level).abs())
        .fold(0.0, f64::max);
    (dev, a.max_abs() / level - 1.0)
}

pub fn zc_cross_flatness() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for (u, w) in [(7, 11), (7, 13), (11, 13)] {
        let (dev, _) = cross_flatness(35, 39, u, w);
        let ok = dev <= 1e-9;
        pass &= ok;
        parts.push(format!(
            "({u},{w}) dev {dev:.1e}{}",
            if ok { "" } else { " NOT FLAT" }
        ));
    }
    let (_, excess) = cross_flatness(32, 37, 11, 13);
    let counter = excess > 0.10;
    pass &= counter;
    parts.push(format!("M=32 max exceeds level by {:.0}%", 100.0 * excess));
    Verdict::new(pass, parts.join("; "))
}

pub fn gauss_sum_exhaustive() -> Verdict {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in (1..=101usize).step_by(2) {
        for a in 1..=n as i64 {
            if zakzc_core::arith::gcd(a, n as i64) != 1 {
                continue;
            }
            let v = gauss_sum_magnitude(n, a).unwrap();
            worst = worst.max((v - (n as f64).sqrt()).abs());
            cases += 1;
        }
    }
    Verdict::new(
        worst <= 1e-10,
        format!("{cases} (N, a) pairs, max deviation {worst:.1e}"),
    )
}

pub fn closed_forms() -> Verdict {
    let g = grid(31, 37);
    let mut zc_worst = 0.0f64;
    for u in [1i64, 2, 11, 23, 100, 1146] {
        let p = ZcPilot::new(g, u).unwrap();
        zc_worst = zc_worst.max(phase_aligned_max_diff(
            p.signal().values(),
            p.signal_from_sequence().values(),
        ));
    }
    let mut chirp_worst = 0.0f64;
    for q in [1i64, 3, 5, 8] {
        let c = ChirpPilot::new(g, q).unwrap();
        chirp_worst = chirp_worst.max(phase_aligned_max_diff(
            c.signal().values(),
            c.direct_signal().values(),
        ));
    }
    Verdict::new(
        zc_worst < 1e-9 && chirp_worst < 1e-9,
        format!("ZC max diff {zc_worst:.1e}, chirp max diff {chirp_worst:.1e}"),
    )
}

pub fn papr_bands() -> Verdict {
    let rows = run_papr(&ExperimentConfig::preset(Preset::Papr)).unwrap();
    let get = |k| rows.iter().find(|r| r.pilot == k).unwrap().papr_db;
    let (point, zc) = (get(PilotKind::Point), get(PilotKind::Zc));
    Verdict::new(
        (point - 15.0).abs() <= 1.5 && (zc - 6.0).abs() <= 1.5,
        format!("point {point:.2} dB, ZC u=23 {zc:.2} dB"),
    )
}

pub fn crystallization() -> Verdict {
    let g = grid(31, 37);
    let a = check_crystallization(&g, VEH_A_MAX_DELAY, 815.0);
    let b = check_crystallization(&g, VEH_A_MAX_DELAY, 6000.0);
    Verdict::new(
        (a.k_max, a.l_max) == (3, 3) && b.l_max == 15,
        format!(
            "815 Hz: ({}, {}); 6000 Hz: l_max {}",
            a.k_max, a.l_max, b.l_max
        ),
    )
}

fn nmse_curve(rows: &[NmseRow], kind: PilotKind) -> Vec<&NmseRow> {
    rows.iter().filter(|r| r.pilot == kind).collect()
}

/// Linear NMSE non-increasing in PDR within one combined standard error.
fn monotone_nmse(curve: &[&NmseRow]) -> bool {
    curve
        .windows(2)
        .all(|w| w[1].nmse <= w[0].nmse + (w[0].std_err.powi(2) + w[1].std_err.powi(2)).sqrt())
}

pub fn nmse_parity() -> Verdict {
    let cfg = ExperimentConfig::preset(Preset::Nmse);
    let rows = run_nmse(&cfg, &quiet).unwrap();
    let zc = nmse_curve(&rows, PilotKind::Zc);
    let ch = nmse_curve(&rows, PilotKind::Chirp);
    let gaps: Vec<(f64, f64)> = zc
        .iter()
        .zip(&ch)
        .map(|(a, b)| (a.pdr_db, a.nmse_db - b.nmse_db))
        .collect();
    let (worst_pdr, worst) =
        gaps.iter().copied().fold(
            (0.0, 0.0f64),
            |acc, g| if g.1.abs() > acc.1.abs() { g } else { acc },
        );
    let parity = gaps.iter().all(|g| g.1.abs() <= 0.5);
    let shape = monotone_nmse(&zc) && monotone_nmse(&ch);
    let list: Vec<String> = gaps
        .iter()
        .map(|(p, g)| format!("{p:.0}:{g:+.2}"))
        .collect();
    Verdict::new(
        parity && shape,
        format!(
            "{} trials, worst gap {worst:+.2} dB at {worst_pdr:.0} dB PDR, monotone {shape}; gaps [{}]",
            cfg.trials,
            list.join(" ")
        ),
    )
}

fn ber_curve(rows: &[BerRow], iters: usize) -> Vec<&BerRow> {
    rows.iter()
        .filter(|r| r.scheme == BerScheme::Joint && r.iterations == iters)
        .collect()
}

fn interior_minimum(curve: &[&BerRow]) -> bool {
    let (imin, _) = curve
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, r)| {
            if r.ber < acc.1 {
                (i, r.ber)
            } else {
                acc
            }
        });
    imin > 0 && imin + 1 < curve.len()
}

pub fn ber_u_shape_and_turbo() -> Verdict {
    let cfg = ExperimentConfig::preset(Preset::Ber);
    let rows = run_ber(&cfg, &quiet).unwrap();
    let (c1, c3, c5) = (
        ber_curve(&rows, 1),
        ber_curve(&rows, 3),
        ber_curve(&rows, 5),
    );
    let u_shape = interior_minimum(&c1) && interior_minimum(&c3) && interior_minimum(&c5);
    let leq = |a: &[&BerRow], b: &[&BerRow]| {
        a.iter()
            .zip(b)
            .all(|(x, y)| x.ber <= y.ber + (x.std_err.powi(2) + y.std_err.powi(2)).sqrt())
    };
    let ordered = leq(&c5, &c3) && leq(&c3, &c1);
    let best = |c: &[&BerRow]| {
        c.iter().fold((0.0, f64::INFINITY), |acc, r| {
            if r.ber < acc.1 {
                (r.pdr_db, r.ber)
            } else {
                acc
            }
        })
    };
    let (p1, b1) = best(&c1);
    let (p5, b5) = best(&c5);
    Verdict::new(
        u_shape && ordered,
        format!(
            "{} trials, U-shape {u_shape}, 5<=3<=1 {ordered}; min BER 1 iter {b1:.1e} at {p1:.0} dB, 5 iter {b5:.1e} at {p5:.0} dB",
            cfg.trials
        ),
    )
}

fn rach_curve(rows: &[RachRow], d: Detector) -> Vec<&RachRow> {
    rows.iter().filter(|r| r.detector == d).collect()
}

fn se2(a: &RachRow, b: &RachRow) -> f64 {
    (a.std_err.powi(2) + b.std_err.powi(2)).sqrt()
}

/// Noise-free K=2 of 4 users on on-grid paths at M=5, N=7: every detector
/// mode returns exactly the active pair.
pub fn small_instance_recovery() -> bool {
    let g = grid(5, 7);
    let roots = [1i64, 2, 3, 4];
    let sets = DelayDopplerSets::new(&g, 2.0 * g.delay_step(), g.doppler_step());
    let a = build_with_sets(
        &roots,
        &g,
        &PulseShapingFilter::ideal(),
        sets,
        TapWindow::new(-1, 3, -2, 2),
    )
    .unwrap();
    let respond = |u: i64, k: i64, l: i64, h: Complex64| -> DDSignal {
        twisted_convolve(
            &FilterTaps::from_triples([(k, l, h)]),
            &ZcPilot::new(g, u).unwrap().signal(),
        )
    };
    let hyps = [(0i64, 0i64), (1, -1), (2, 1)];
    for j1 in 0..4 {
        for j2 in j1 + 1..4 {
            for &(k1, l1) in &hyps {
                for &(k2, l2) in &hyps {
                    let mut y = respond(roots[j1], k1, l1, Complex64::new(1.0, 0.0));
                    y.axpy(
                        Complex64::new(1.0, 0.0),
                        &respond(roots[j2], k2, l2, Complex64::new(0.0, 0.8)),
                    )
                    .unwrap();
                    let modes = [
                        OstMode::BlindGrouped,
                        OstMode::BlindUngrouped,
                        OstMode::OnGrid {
                            delay_bins: vec![k1, k2],
                        },
                    ];
                    if modes
                        .iter()
                        .any(|m| ost_detect(&a, &y, 2, m).unwrap() != vec![j1, j2])
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn ost_ordering() -> Verdict {
    let cfg = ExperimentConfig::preset(Preset::Rach);
    let rows = run_rach(&cfg, &quiet).unwrap();
    let on = rach_curve(&rows, Detector::OnGrid);
    let gr = rach_curve(&rows, Detector::BlindGrouped);
    let un = rach_curve(&rows, Detector::BlindUngrouped);
    let ca = rach_curve(&rows, Detector::CrossAmbiguity);
    // high-SNR regime: the on-grid detector misses at most 10% of users
    let high: Vec<usize> = (0..on.len()).filter(|&i| on[i].missed <= 0.1).collect();
    let ordered = !high.is_empty()
        && high.iter().all(|&i| {
            on[i].missed <= gr[i].missed + se2(on[i], gr[i])
                && gr[i].missed <= un[i].missed + se2(gr[i], un[i])
                && gr[i].missed <= ca[i].missed + se2(gr[i], ca[i])
        });
    let monotone = [&on, &gr, &un, &ca].iter().all(|c| {
        c.windows(2)
            .all(|w| w[1].missed <= w[0].missed + se2(w[0], w[1]))
    });
    let exact = small_instance_recovery();
    let last = on.len() - 1;
    Verdict::new(
        ordered && monotone && exact,
        format!(
            "{} trials, ordering over {} high-SNR points {ordered}, monotone {monotone}, small instance exact {exact}; at {:.0} dB: on-grid {:.4} grouped {:.4} ungrouped {:.4} cross-amb {:.4}",
            cfg.trials,
            high.len(),
            on[last].snr_db,
            on[last].missed,
            gr[last].missed,
            un[last].missed,
            ca[last].missed
        ),
    )
}

pub const PROPERTY_CASES: u32 = 1000;

pub fn properties() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, prop) in props::ALL {
        let mut runner = TestRunner::new(Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        });
        let r = runner.run(
            &(1usize..=9, 1usize..=9, proptest::num::u64::ANY),
            |(m, n, s)| prop(m, n, s).map(|_| ()).map_err(TestCaseError::fail),
        );
        match r {
            Ok(()) => parts.push(format!("{name} ok")),
            Err(e) => {
                pass = false;
                parts.push(format!("{name} FAILED ({e})"));
            }
        }
    }
    Verdict::new(
        pass,
        format!("{PROPERTY_CASES} cases each: {}", parts.join(", ")),
    )
}
