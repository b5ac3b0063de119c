use super::signal::TDSignal;
use crate::error::{Error, Result};

/// Peak-to-average power ratio in dB: `10 log10(max |s|^2 / mean |s|^2)`.
pub fn papr(td: &TDSignal) -> Result<f64> {
    papr_of(td.samples())
}

pub fn papr_of(samples: &[num_complex::Complex64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Undefined("PAPR of an empty signal".into()));
    }
    let powers = samples.iter().map(|v| v.norm_sqr());
    let (peak, sum) = powers.fold((0.0f64, 0.0f64), |(p, s), x| (p.max(x), s + x));
    let mean = sum / samples.len() as f64;
    if mean == 0.0 {
        return Err(Error::Undefined("PAPR of the zero signal".into()));
    }
    Ok(10.0 * (peak / mean).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn constant_modulus_is_zero_db() {
        let s: Vec<Complex64> = (0..64)
            .map(|i| Complex64::from_polar(2.0, i as f64))
            .collect();
        assert!(papr_of(&s).unwrap().abs() < 1e-12);
    }

    #[test]
    fn zero_signal_is_undefined() {
        assert!(papr_of(&[Complex64::new(0.0, 0.0); 4]).is_err());
    }

    #[test]
    fn single_spike() {
        let mut s = vec![Complex64::new(0.0, 0.0); 10];
        s[3] = Complex64::new(1.0, 0.0);
        assert!((papr_of(&s).unwrap() - 10.0).abs() < 1e-12);
    }
}
