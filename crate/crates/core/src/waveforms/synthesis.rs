//! Oversampled time-domain realization of a DD signal for PAPR analysis.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::channel::PulseShapingFilter;
use crate::dd::{inverse_zak_samples, twisted_convolve, DDSignal, TDSignal};
use crate::error::{Error, Result};

/// Shapes `x` with the transmit filter sampled on the information lattice,
/// takes the inverse Zak transform and band-limits the result to `Q` samples
/// per symbol interval `1/B` by spectral zero-padding.
pub fn td_realization(x: &DDSignal, filter: &PulseShapingFilter, q: usize) -> Result<TDSignal> {
    if q == 0 {
        return Err(Error::InvalidParameter("oversampling must be >= 1".into()));
    }
    let grid = *x.grid();
    let shaped = twisted_convolve(&filter.lattice_taps(), x);
    let td = inverse_zak_samples(&shaped);
    TDSignal::new(&grid, upsample(&td, q), q)
}

/// Periodic band-limited interpolation by an integer factor. For even lengths
/// the Nyquist bin is split between the two halves.
pub fn upsample(samples: &[Complex64], q: usize) -> Vec<Complex64> {
    let n = samples.len();
    if q == 1 || n == 0 {
        return samples.to_vec();
    }
    let mut planner = FftPlanner::new();
    let mut spec = samples.to_vec();
    planner.plan_fft_forward(n).process(&mut spec);
    let big = n * q;
    let mut padded = vec![Complex64::new(0.0, 0.0); big];
    let pos = n / 2 + 1;
    let neg = n - pos;
    padded[..pos].copy_from_slice(&spec[..pos]);
    padded[big - neg..].copy_from_slice(&spec[pos..]);
    if n.is_multiple_of(2) {
        let half = spec[n / 2] * 0.5;
        padded[n / 2] = half;
        padded[big - n / 2] = half;
    }
    planner.plan_fft_inverse(big).process(&mut padded);
    let scale = 1.0 / n as f64;
    padded.iter().map(|v| v * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upsample_keeps_original_samples() {
        for n in [7usize, 8] {
            let x: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()))
                .collect();
            let y = upsample(&x, 4);
            assert_eq!(y.len(), 4 * n);
            for i in 0..n {
                assert!((y[4 * i] - x[i]).norm() < 1e-12, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn tone_upsamples_to_constant_modulus() {
        let n = 9;
        let x: Vec<Complex64> = (0..n)
            .map(|i| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 2.0 * i as f64 / n as f64)
            })
            .collect();
        let y = upsample(&x, 4);
        assert!(y.iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
    }
}
