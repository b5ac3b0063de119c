use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use rand::Rng;

use zakzc_core::channel::{draw_veh_a_with, effective_taps, PulseShapingFilter, TapWindow};
use zakzc_core::dd::{inverse_zak_samples, twisted_convolve, zak_from_samples, DDGrid, DDSignal};
use zakzc_core::rach::{build_observation_matrix, draw_preamble_roots, ost_scores, OstMode};
use zakzc_core::receiver::{lmmse_detect_with, ChannelEstimate, LmmseMethod};
use zakzc_core::waveforms::{self_ambiguity, ZcPilot};
use zakzc_core::{rng_from_seed, SimRng};

const NU_MAX: f64 = 815.0;

fn grid() -> DDGrid {
    DDGrid::new(31, 37, 30e3).unwrap()
}

fn noise(g: DDGrid, rng: &mut SimRng) -> DDSignal {
    DDSignal::from_fn(g, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

fn channel(g: &DDGrid, rng: &mut SimRng) -> ChannelEstimate {
    let phy = draw_veh_a_with(rng, NU_MAX);
    let window = TapWindow::for_spreads(g, phy.tau_max, phy.nu_max);
    let filt = PulseShapingFilter::rrc(0.6, 0.6).unwrap();
    ChannelEstimate {
        taps: effective_taps(&phy.paths, &filt, g, &window),
        window,
    }
}

fn transforms(c: &mut Criterion) {
    let g = grid();
    let mut rng = rng_from_seed(1);
    let x = noise(g, &mut rng);
    let td = inverse_zak_samples(&x);
    c.bench_function("zak 31x37", |b| {
        b.iter(|| zak_from_samples(black_box(&td), &g).unwrap())
    });
    c.bench_function("inverse zak 31x37", |b| {
        b.iter(|| inverse_zak_samples(black_box(&x)))
    });
    let h = channel(&g, &mut rng);
    c.bench_function("twisted convolution veh-a", |b| {
        b.iter(|| twisted_convolve(black_box(&h.taps), black_box(&x)))
    });
}

fn ambiguity(c: &mut Criterion) {
    let x = ZcPilot::new(grid(), 11).unwrap().signal();
    let mut group = c.benchmark_group("ambiguity");
    group.sample_size(10);
    group.bench_function("zc self 31x37", |b| {
        b.iter(|| self_ambiguity(black_box(&x)))
    });
    group.finish();
}

fn channel_model(c: &mut Criterion) {
    let g = grid();
    let filt = PulseShapingFilter::rrc(0.6, 0.6).unwrap();
    let mut rng = rng_from_seed(2);
    let phy = draw_veh_a_with(&mut rng, NU_MAX);
    let window = TapWindow::for_spreads(&g, phy.tau_max, phy.nu_max);
    c.bench_function("effective taps veh-a", |b| {
        b.iter(|| effective_taps(black_box(&phy.paths), &filt, &g, &window))
    });
}

fn detection(c: &mut Criterion) {
    let g = grid();
    let mut rng = rng_from_seed(3);
    let h = channel(&g, &mut rng);
    let y = twisted_convolve(&h.taps, &noise(g, &mut rng));
    let mut group = c.benchmark_group("lmmse");
    group.sample_size(10);
    group.bench_function("conjugate gradient", |b| {
        b.iter(|| {
            lmmse_detect_with(black_box(&y), &h, 1e-2, LmmseMethod::ConjugateGradient).unwrap()
        })
    });
    group.finish();
}

fn rach(c: &mut Criterion) {
    let g = grid();
    let filt = PulseShapingFilter::rrc(0.6, 0.6).unwrap();
    let roots = draw_preamble_roots(&g, 16, 7).unwrap();
    let tau = zakzc_core::channel::VEH_A_MAX_DELAY;
    let mut group = c.benchmark_group("rach");
    group.sample_size(10);
    group.bench_function("observation matrix", |b| {
        b.iter(|| build_observation_matrix(black_box(&roots), &g, &filt, tau, NU_MAX).unwrap())
    });
    let a = build_observation_matrix(&roots, &g, &filt, tau, NU_MAX).unwrap();
    let y = noise(g, &mut rng_from_seed(4));
    group.bench_function("ost grouped", |b| {
        b.iter(|| ost_scores(&a, black_box(&y), &OstMode::BlindGrouped).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    transforms,
    ambiguity,
    channel_model,
    detection,
    rach
);
criterion_main!(benches);
