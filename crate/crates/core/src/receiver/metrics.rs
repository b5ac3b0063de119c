use num_complex::Complex64;

use crate::dd::FilterTaps;
use crate::error::{Error, Result};

/// `sum |h_est - h|^2 / sum |h|^2` over the union of both supports.
pub fn nmse(estimate: &FilterTaps, truth: &FilterTaps) -> Result<f64> {
    let e = truth.energy();
    if e == 0.0 {
        return Err(Error::Undefined("NMSE against a zero channel".into()));
    }
    Ok(estimate.difference(truth).energy() / e)
}

/// Fraction of wrong bits between two 4-QAM symbol arrays (two bits per
/// symbol, one per quadrature).
pub fn ber(decisions: &[Complex64], truth: &[Complex64]) -> Result<f64> {
    if decisions.len() != truth.len() {
        return Err(Error::Dimension(format!(
            "{} decisions for {} symbols",
            decisions.len(),
            truth.len()
        )));
    }
    if truth.is_empty() {
        return Err(Error::Undefined("BER of an empty frame".into()));
    }
    Ok(bit_errors(decisions, truth) as f64 / (2 * truth.len()) as f64)
}

pub fn bit_errors(decisions: &[Complex64], truth: &[Complex64]) -> usize {
    decisions
        .iter()
        .zip(truth)
        .map(|(d, t)| {
            usize::from((d.re < 0.0) != (t.re < 0.0)) + usize::from((d.im < 0.0) != (t.im < 0.0))
        })
        .sum()
}

pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
