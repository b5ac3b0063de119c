//! The noisy input-output relation `y = h_eff *s x + n` and its linear forms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::veh_a::complex_gaussian;
use crate::arith::RootTable;
use crate::dd::{twisted_convolve, DDGrid, DDSignal, FilterTaps};
use crate::error::{Error, Result};
use crate::rng_from_seed;

pub fn apply_channel(
    x: &DDSignal,
    taps: &FilterTaps,
    noise_variance: f64,
    seed: u64,
) -> Result<DDSignal> {
    let mut rng = rng_from_seed(seed);
    apply_channel_with(x, taps, noise_variance, &mut rng)
}

pub fn apply_channel_with<R: Rng + ?Sized>(
    x: &DDSignal,
    taps: &FilterTaps,
    noise_variance: f64,
    rng: &mut R,
) -> Result<DDSignal> {
    let mut y = twisted_convolve(taps, x);
    add_noise(&mut y, noise_variance, rng)?;
    Ok(y)
}

/// Adds circularly-symmetric complex Gaussian noise of the given variance to
/// every fundamental-region sample.
pub fn add_noise<R: Rng + ?Sized>(
    y: &mut DDSignal,
    noise_variance: f64,
    rng: &mut R,
) -> Result<()> {
    if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be nonnegative, got {noise_variance}"
        )));
    }
    if noise_variance > 0.0 {
        for v in y.values_mut() {
            *v += complex_gaussian(rng, noise_variance);
        }
    }
    Ok(())
}

/// Dense `MN x MN` matrix of `x -> taps *s x` in k-major vectorization.
pub fn build_io_matrix(taps: &FilterTaps, grid: &DDGrid) -> DMatrix<Complex64> {
    let mn = grid.mn();
    let mut h = DMatrix::<Complex64>::zeros(mn, mn);
    let mut e = DDSignal::zeros(*grid);
    for j in 0..mn {
        e.values_mut()[j] = Complex64::new(1.0, 0.0);
        let col = twisted_convolve(taps, &e);
        for (i, v) in col.values().iter().enumerate() {
            h[(i, j)] = *v;
        }
        e.values_mut()[j] = Complex64::new(0.0, 0.0);
    }
    h
}

/// The DD channel as a time-domain operator on the inverse-Zak samples.
///
/// A tap `(a, b)` acts as `y[n] = h x[n - a] xi_MN^{b (n - a)}`, so grouping
/// taps by delay gives `y[n] = sum_a c_a[n] x[n - a]` with
/// `c_a[n] = sum_b h[a, b] xi_MN^{b (n - a)}`. Indices are mod `MN`.
#[derive(Debug, Clone)]
pub struct TdChannelOperator {
    mn: usize,
    /// `(a mod MN, c_a)` per distinct delay
    lanes: Vec<(usize, Vec<Complex64>)>,
}

impl TdChannelOperator {
    pub fn new(taps: &FilterTaps, grid: &DDGrid) -> Self {
        let mn = grid.mn();
        let mni = mn as i64;
        let roots = RootTable::new(mn);
        let mut lanes: Vec<(usize, Vec<Complex64>)> = Vec::new();
        for t in taps.taps() {
            let a = t.k.rem_euclid(mni) as usize;
            let idx = match lanes.iter().position(|(s, _)| *s == a) {
                Some(i) => i,
                None => {
                    lanes.push((a, vec![Complex64::new(0.0, 0.0); mn]));
                    lanes.len() - 1
                }
            };
            let c = &mut lanes[idx].1;
            for (n, cn) in c.iter_mut().enumerate() {
                *cn += t.value * roots.get(t.l * (n as i64 - t.k));
            }
        }
        Self { mn, lanes }
    }

    pub fn len(&self) -> usize {
        self.mn
    }

    pub fn is_empty(&self) -> bool {
        self.mn == 0
    }

    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (a, c) in &self.lanes {
            let a = *a;
            for n in 0..self.mn {
                let src = if n >= a { n - a } else { n + self.mn - a };
                y[n] += c[n] * x[src];
            }
        }
    }

    /// `(H^H z)[m] = sum_a conj(c_a[m + a]) z[m + a]`.
    pub fn apply_adjoint(&self, z: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (a, c) in &self.lanes {
            let a = *a;
            for (m, o) in out.iter_mut().enumerate() {
                let i = if m + a >= self.mn {
                    m + a - self.mn
                } else {
                    m + a
                };
                *o += c[i].conj() * z[i];
            }
        }
    }
}
