//! Algebraic invariants of the DD layer, checked on random grids, signals and
//! filters. Each returns the worst deviation found or an error message.

use num_complex::Complex64;
use rand::Rng;
use zakzc_core::arith::root;
use zakzc_core::dd::{
    inverse_zak_samples, twisted_convolve, zak_from_samples, DDGrid, DDSignal, FilterTaps,
};
use zakzc_core::rng_from_seed;

pub const TOL: f64 = 1e-10;

pub fn grid(m: usize, n: usize) -> DDGrid {
    DDGrid::new(m, n, 30e3).expect("positive dimensions")
}

fn cplx(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn signal(g: DDGrid, seed: u64) -> DDSignal {
    let mut rng = rng_from_seed(seed);
    DDSignal::from_fn(g, |_, _| cplx(&mut rng))
}

/// 1 to 5 taps at offsets up to three periods away in either direction.
pub fn taps(g: &DDGrid, seed: u64) -> FilterTaps {
    let mut rng = rng_from_seed(seed);
    let (m, n) = (g.m() as i64, g.n() as i64);
    let count = rng.gen_range(1..=5);
    FilterTaps::from_triples((0..count).map(|_| {
        (
            rng.gen_range(-3 * m..=3 * m),
            rng.gen_range(-3 * n..=3 * n),
            cplx(&mut rng),
        )
    }))
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn within(what: &str, err: f64) -> Result<f64, String> {
    if err <= TOL {
        Ok(err)
    } else {
        Err(format!("{what}: deviation {err:.3e}"))
    }
}

/// TD -> DD -> TD and DD -> TD -> DD both reproduce their input.
pub fn zak_round_trip(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let g = grid(m, n);
    let x = signal(g, seed);
    let back = zak_from_samples(&inverse_zak_samples(&x), &g).map_err(|e| e.to_string())?;
    let e1 = max_diff(back.values(), x.values());
    let td = signal(g, seed ^ 0x5a5a).into_values();
    let td_back = inverse_zak_samples(&zak_from_samples(&td, &g).map_err(|e| e.to_string())?);
    within("zak round trip", e1.max(max_diff(&td_back, &td)))
}

/// The Zak transform preserves energy and inner products.
pub fn parseval(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let g = grid(m, n);
    let x = signal(g, seed);
    let y = signal(g, seed.wrapping_add(1));
    let (xt, yt) = (inverse_zak_samples(&x), inverse_zak_samples(&y));
    let e_dd = x.energy();
    let e_td: f64 = xt.iter().map(|v| v.norm_sqr()).sum();
    let ip_td: Complex64 = xt.iter().zip(&yt).map(|(a, b)| a * b.conj()).sum();
    let ip_dd = x.inner(&y).map_err(|e| e.to_string())?;
    within(
        "parseval",
        ((e_dd - e_td).abs() / e_dd).max((ip_dd - ip_td).norm() / e_dd),
    )
}

pub fn twisted_identity(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let x = signal(grid(m, n), seed);
    let y = twisted_convolve(&FilterTaps::identity(), &x);
    within("identity", max_diff(y.values(), x.values()))
}

/// `(a *s b) *s x = a *s (b *s x)`, and composition of filters associates.
pub fn twisted_associativity(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let g = grid(m, n);
    let (a, b, c) = (taps(&g, seed), taps(&g, seed ^ 1), taps(&g, seed ^ 2));
    let x = signal(g, seed ^ 3);
    let lhs = twisted_convolve(&a.compose(&b, &g), &x);
    let rhs = twisted_convolve(&a, &twisted_convolve(&b, &x));
    let e1 = max_diff(lhs.values(), rhs.values());
    let ab_c = a.compose(&b, &g).compose(&c, &g);
    let a_bc = a.compose(&b.compose(&c, &g), &g);
    let e2 = max_diff(
        twisted_convolve(&ab_c, &x).values(),
        twisted_convolve(&a_bc, &x).values(),
    );
    within("associativity", e1.max(e2))
}

/// Linear in the signal and in the filter.
pub fn twisted_linearity(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let g = grid(m, n);
    let mut rng = rng_from_seed(seed);
    let (alpha, beta) = (cplx(&mut rng), cplx(&mut rng));
    let (a, b) = (taps(&g, seed ^ 7), taps(&g, seed ^ 8));
    let (x, y) = (signal(g, seed ^ 9), signal(g, seed ^ 10));
    let mut mix = x.scaled(alpha);
    mix.axpy(beta, &y).map_err(|e| e.to_string())?;
    let lhs = twisted_convolve(&a, &mix);
    let mut rhs = twisted_convolve(&a, &x).scaled(alpha);
    rhs.axpy(beta, &twisted_convolve(&a, &y))
        .map_err(|e| e.to_string())?;
    let e1 = max_diff(lhs.values(), rhs.values());
    let sum: Vec<_> = a.taps().iter().chain(b.taps()).copied().collect();
    let lhs2 = twisted_convolve(&FilterTaps::new(sum), &x);
    let rhs2 = twisted_convolve(&a, &x)
        .add(&twisted_convolve(&b, &x))
        .map_err(|e| e.to_string())?;
    within("linearity", e1.max(max_diff(lhs2.values(), rhs2.values())))
}

/// `x[k + pM, l + qN] = xi_N^{p l} x[k, l]`, and the extension agrees with the
/// Zak sum evaluated directly at any integer `(k, l)` of an `MN`-periodic
/// time signal.
pub fn quasi_periodic_accessor(m: usize, n: usize, seed: u64) -> Result<f64, String> {
    let g = grid(m, n);
    let td = signal(g, seed).into_values();
    let x = zak_from_samples(&td, &g).map_err(|e| e.to_string())?;
    let mut rng = rng_from_seed(seed ^ 0xabc);
    let (mi, ni, mn) = (m as i64, n as i64, (m * n) as i64);
    let mut worst = 0.0f64;
    for _ in 0..8 {
        let k = rng.gen_range(-5 * mi..5 * mi);
        let l = rng.gen_range(-5 * ni..5 * ni);
        let p = rng.gen_range(-4i64..=4);
        let q = rng.gen_range(-4i64..=4);
        let law = x.at(k + p * mi, l + q * ni) - root(ni, p * l) * x.at(k, l);
        let direct: Complex64 = (0..ni)
            .map(|s| td[(k + s * mi).rem_euclid(mn) as usize] * root(ni, -s * l))
            .sum::<Complex64>()
            / (n as f64).sqrt();
        worst = worst.max(law.norm()).max((direct - x.at(k, l)).norm());
    }
    within("quasi-periodicity", worst)
}

/// Properties by name, for the acceptance harness.
pub type Property = fn(usize, usize, u64) -> Result<f64, String>;

pub const ALL: [(&str, Property); 6] = [
    ("zak round trip", zak_round_trip),
    ("parseval", parseval),
    ("twisted identity", twisted_identity),
    ("twisted associativity", twisted_associativity),
    ("twisted linearity", twisted_linearity),
    ("quasi-periodic accessor", quasi_periodic_accessor),
];
