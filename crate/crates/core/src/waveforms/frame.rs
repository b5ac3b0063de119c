//! Data frames of 4-QAM symbols, one per DD grid point.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::dd::{DDGrid, DDSignal};
use crate::error::Result;

/// Unit-energy 4-QAM symbol `(+-1 +- j) / sqrt(2)` from two bits.
pub fn qam4_symbol(b0: bool, b1: bool) -> Complex64 {
    let re = if b0 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
    let im = if b1 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
    Complex64::new(re, im)
}

/// Nearest 4-QAM point.
pub fn qam4_decide(v: Complex64) -> Complex64 {
    qam4_symbol(v.re < 0.0, v.im < 0.0)
}

pub fn random_qam4<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| qam4_symbol(rng.gen(), rng.gen()))
        .collect()
}

/// Superposition of one DD pulse per grid point; by linearity the
/// fundamental region is the symbol array itself (k-major).
pub fn data_frame_signal(symbols: &[Complex64], grid: &DDGrid) -> Result<DDSignal> {
    DDSignal::from_values(*grid, symbols.to_vec())
}
