//! Linear MMSE symbol detection.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::estimate::ChannelEstimate;
use crate::channel::{build_io_matrix, TdChannelOperator};
use crate::dd::{inverse_zak_samples, zak_from_samples, DDSignal};
use crate::error::{Error, Result};
use crate::waveforms::qam4_decide;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LmmseMethod {
    /// Dense `MN x MN` Cholesky solve.
    Dense,
    /// Conjugate gradient on the normal equations, with the channel applied
    /// as a time-domain operator.
    #[default]
    ConjugateGradient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    /// k-major soft estimates
    pub soft: Vec<Complex64>,
    pub decisions: Vec<Complex64>,
}

const CG_TOL: f64 = 1e-10;
const CG_MAX_ITER: usize = 4000;

/// `soft = (H^H H + v I)^{-1} H^H y`, then nearest 4-QAM point per entry.
pub fn lmmse_detect(y: &DDSignal, est: &ChannelEstimate, variance: f64) -> Result<Detection> {
    lmmse_detect_with(y, est, variance, LmmseMethod::ConjugateGradient)
}

pub fn lmmse_detect_with(
    y: &DDSignal,
    est: &ChannelEstimate,
    variance: f64,
    method: LmmseMethod,
) -> Result<Detection> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "interference variance must be nonnegative, got {variance}"
        )));
    }
    let soft = match method {
        LmmseMethod::Dense => solve_dense(y, est, variance)?,
        LmmseMethod::ConjugateGradient => solve_cg(y, est, variance)?,
    };
    let decisions = soft.iter().map(|&v| qam4_decide(v)).collect();
    Ok(Detection { soft, decisions })
}

fn solve_dense(y: &DDSignal, est: &ChannelEstimate, variance: f64) -> Result<Vec<Complex64>> {
    let grid = y.grid();
    let h = build_io_matrix(&est.taps, grid);
    let hh = h.adjoint();
    let mut a = &hh * &h;
    for i in 0..grid.mn() {
        a[(i, i)] += Complex64::new(variance, 0.0);
    }
    let rhs = &hh * DVector::from_column_slice(y.values());
    let chol = a
        .cholesky()
        .ok_or_else(|| Error::Numerical("regularized normal matrix is singular".into()))?;
    let x = chol.solve(&rhs);
    Ok(x.iter().copied().collect())
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum()
}

/// The Zak transform is unitary, so the normal equations can be solved on
/// the inverse-Zak samples and mapped back.
fn solve_cg(y: &DDSignal, est: &ChannelEstimate, variance: f64) -> Result<Vec<Complex64>> {
    let grid = y.grid();
    let mn = grid.mn();
    let op = TdChannelOperator::new(&est.taps, grid);
    let y_td = inverse_zak_samples(y);
    let zero = Complex64::new(0.0, 0.0);

    let normal = |v: &[Complex64], tmp: &mut [Complex64], out: &mut [Complex64]| {
        op.apply(v, tmp);
        op.apply_adjoint(tmp, out);
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * variance;
        }
    };

    let mut b = vec![zero; mn];
    op.apply_adjoint(&y_td, &mut b);
    let b_norm = norm_sqr(&b).sqrt();
    if b_norm == 0.0 {
        if variance == 0.0 && est.taps.taps().iter().all(|t| t.value == zero) {
            return Err(Error::Numerical(
                "zero channel with zero regularization".into(),
            ));
        }
        return Ok(vec![zero; mn]);
    }

    let mut x = vec![zero; mn];
    let mut r = b.clone();
    let mut p = r.clone();
    let mut ap = vec![zero; mn];
    let mut tmp = vec![zero; mn];
    let mut rs = norm_sqr(&r);
    let mut converged = false;
    for _ in 0..CG_MAX_ITER {
        normal(&p, &mut tmp, &mut ap);
        let pap = dot(&p, &ap).re;
        if pap.is_nan() || pap <= 0.0 {
            break;
        }
        let alpha = rs / pap;
        for i in 0..mn {
            x[i] += p[i] * alpha;
            r[i] -= ap[i] * alpha;
        }
        let rs_new = norm_sqr(&r);
        if rs_new.sqrt() <= CG_TOL * b_norm {
            converged = true;
            break;
        }
        let beta = rs_new / rs;
        for i in 0..mn {
            p[i] = r[i] + p[i] * beta;
        }
        rs = rs_new;
    }
    if !converged && variance == 0.0 {
        return Err(Error::Numerical(
            "normal equations did not converge without regularization".into(),
        ));
    }
    Ok(zak_from_samples(&x, grid)?.into_values())
}
