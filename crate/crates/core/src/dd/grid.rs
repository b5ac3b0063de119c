use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Discrete delay-Doppler lattice: `M` delay bins per delay period, `N`
/// Doppler bins per Doppler period.
///
/// Only the Doppler period is stored; the delay period is always its
/// reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DDGrid {
    m: usize,
    n: usize,
    doppler_period: f64,
}

impl DDGrid {
    pub fn new(m: usize, n: usize, doppler_period: f64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid needs M, N >= 1 (got M={m}, N={n})"
            )));
        }
        if !(doppler_period.is_finite() && doppler_period > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Doppler period must be positive, got {doppler_period}"
            )));
        }
        Ok(Self {
            m,
            n,
            doppler_period,
        })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `M * N`, the number of points in the fundamental region.
    #[inline]
    pub fn mn(&self) -> usize {
        self.m * self.n
    }

    /// Doppler period in Hz.
    pub fn doppler_period(&self) -> f64 {
        self.doppler_period
    }

    /// Delay period in seconds.
    pub fn delay_period(&self) -> f64 {
        1.0 / self.doppler_period
    }

    /// `B = M * nu_p`.
    pub fn bandwidth(&self) -> f64 {
        self.m as f64 * self.doppler_period
    }

    /// `T = N * tau_p`.
    pub fn duration(&self) -> f64 {
        self.n as f64 * self.delay_period()
    }

    /// Delay resolution `tau_p / M` in seconds.
    pub fn delay_step(&self) -> f64 {
        self.delay_period() / self.m as f64
    }

    /// Doppler resolution `nu_p / N` in Hz.
    pub fn doppler_step(&self) -> f64 {
        self.doppler_period / self.n as f64
    }

    /// Flat index of `(k, l)` in the fundamental region (k-major).
    #[inline]
    pub fn index(&self, k: usize, l: usize) -> usize {
        k * self.n + l
    }

    /// Hypotheses of the ZC/chirp pilot results: `M`, `N` odd and coprime.
    pub fn require_odd_coprime(&self) -> Result<()> {
        if self.m.is_multiple_of(2) || self.n.is_multiple_of(2) {
            return Err(Error::Construction(format!(
                "M and N must be odd (M={}, N={})",
                self.m, self.n
            )));
        }
        if gcd(self.m as i64, self.n as i64) != 1 {
            return Err(Error::Construction(format!(
                "M and N must be coprime (M={}, N={})",
                self.m, self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &DDGrid) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::Dimension(format!(
                "grid {}x{} vs {}x{}",
                self.m, self.n, other.m, other.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let g = DDGrid::new(31, 37, 30e3).unwrap();
        assert!((g.delay_period() * g.doppler_period() - 1.0).abs() < 1e-15);
        assert!((g.bandwidth() - 930e3).abs() < 1e-6);
        assert!((g.bandwidth() * g.duration() - (31.0 * 37.0)).abs() < 1e-9);
        assert!((g.duration() - 1.2333e-3).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(DDGrid::new(0, 5, 1.0).is_err());
        assert!(DDGrid::new(3, 5, 0.0).is_err());
        assert!(DDGrid::new(32, 37, 1.0)
            .unwrap()
            .require_odd_coprime()
            .is_err());
        assert!(DDGrid::new(21, 15, 1.0)
            .unwrap()
            .require_odd_coprime()
            .is_err());
        assert!(DDGrid::new(31, 37, 1.0)
            .unwrap()
            .require_odd_coprime()
            .is_ok());
    }
}
