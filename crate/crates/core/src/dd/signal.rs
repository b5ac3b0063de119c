use num_complex::Complex64;

use super::grid::DDGrid;
use crate::arith::root;
use crate::error::{Error, Result};

/// A quasi-periodic discrete delay-Doppler signal, stored on the fundamental
/// region `0 <= k < M`, `0 <= l < N` in k-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DDSignal {
    grid: DDGrid,
    values: Vec<Complex64>,
}

impl DDSignal {
    pub fn zeros(grid: DDGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.mn()],
        }
    }

    pub fn from_values(grid: DDGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.mn() {
            return Err(Error::Dimension(format!(
                "expected {} DD values, got {}",
                grid.mn(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: DDGrid, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.mn());
        for k in 0..grid.m() {
            for l in 0..grid.n() {
                values.push(f(k, l));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &DDGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value inside the fundamental region.
    #[inline]
    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.values[self.grid.index(k, l)]
    }

    #[inline]
    pub fn set(&mut self, k: usize, l: usize, v: Complex64) {
        let i = self.grid.index(k, l);
        self.values[i] = v;
    }

    /// Quasi-periodic extension to any integer `(k, l)`:
    /// `x[k + nM, l + mN] = exp(j 2 pi n l / N) x[k, l]`.
    #[inline]
    pub fn at(&self, k: i64, l: i64) -> Complex64 {
        let m = self.grid.m() as i64;
        let n = self.grid.n() as i64;
        let wraps = k.div_euclid(m);
        let k0 = k.rem_euclid(m);
        let l0 = l.rem_euclid(n);
        let v = self.values[(k0 * n + l0) as usize];
        if wraps == 0 {
            v
        } else {
            v * root(n, (wraps % n) * l0)
        }
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `<self, other> = sum self * conj(other)` over the fundamental region.
    pub fn inner(&self, other: &DDSignal) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn scaled(&self, s: Complex64) -> DDSignal {
        DDSignal {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Complex64, other: &DDSignal) -> Result<()> {
        self.grid.check_same(&other.grid)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn add(&self, other: &DDSignal) -> Result<DDSignal> {
        let mut out = self.clone();
        out.axpy(Complex64::new(1.0, 0.0), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &DDSignal) -> Result<DDSignal> {
        let mut out = self.clone();
        out.axpy(Complex64::new(-1.0, 0.0), other)?;
        Ok(out)
    }

    /// Largest elementwise distance to `other`.
    pub fn max_abs_diff(&self, other: &DDSignal) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise distance to `reference` after removing one global
    /// phase, taken from the ratio at the largest-magnitude reference entry.
    pub fn max_diff_up_to_phase(&self, reference: &DDSignal) -> f64 {
        phase_aligned_max_diff(&self.values, &reference.values)
    }
}

/// See [`DDSignal::max_diff_up_to_phase`].
pub fn phase_aligned_max_diff(candidate: &[Complex64], reference: &[Complex64]) -> f64 {
    let Some((i, _)) = reference
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
    else {
        return 0.0;
    };
    let ratio = candidate[i] / reference[i];
    let phase = if ratio.norm() > 0.0 && ratio.is_finite() {
        ratio / ratio.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    candidate
        .iter()
        .zip(reference)
        .map(|(c, r)| (c * phase.conj() - r).norm())
        .fold(0.0, f64::max)
}

/// Time-domain samples of one Zak-OTFS subframe, critically sampled
/// (`oversampling == 1`, length `MN`) or oversampled by an integer factor.
#[derive(Debug, Clone, PartialEq)]
pub struct TDSignal {
    samples: Vec<Complex64>,
    sample_rate: f64,
    oversampling: usize,
}

impl TDSignal {
    pub fn new(grid: &DDGrid, samples: Vec<Complex64>, oversampling: usize) -> Result<Self> {
        if oversampling == 0 {
            return Err(Error::InvalidParameter("oversampling must be >= 1".into()));
        }
        if samples.len() != oversampling * grid.mn() {
            return Err(Error::Dimension(format!(
                "TD signal length {} != Q*M*N = {}",
                samples.len(),
                oversampling * grid.mn()
            )));
        }
        Ok(Self {
            samples,
            sample_rate: oversampling as f64 * grid.bandwidth(),
            oversampling,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn oversampling(&self) -> usize {
        self.oversampling
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum()
    }
}
