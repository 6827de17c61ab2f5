use std::f64::consts::PI;

use nalgebra::linalg::Schur;

use super::{TorusOperator, TorusSpace, C64};
use crate::error::{Error, Result};

/// Smallest `Tmax` with `exp(-Tmax / tau) <= 1e-12`.
pub fn default_spectral_cutoff(tau: f64) -> u32 {
    (tau * 1e12f64.ln()).ceil().max(1.0) as u32
}

/// Damped spectral operator
/// `G = sum_{|t| <= Tmax} e^{i phi t} e^{-|t| / tau} U^t`.
///
/// Terms `t` and `-t` are added as a conjugate pair, so `G` is Hermitian to
/// rounding.
pub fn spectral_operator(
    space: &TorusSpace,
    u: &TorusOperator,
    phi: f64,
    tau: f64,
    tmax: u32,
) -> Result<TorusOperator> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
    }
    if tmax < 1 {
        return Err(Error::InvalidParameter("Tmax must be >= 1".into()));
    }
    if u.dim() != space.dim() {
        return Err(Error::DimensionMismatch(format!(
            "propagator dimension {} vs N = {}",
            u.dim(),
            space.dim()
        )));
    }
    let n = space.dim();
    let mut g = nalgebra::DMatrix::<C64>::identity(n, n);
    let mut p = u.clone();
    for t in 1..=tmax {
        let w = (-(t as f64) / tau).exp();
        if w == 0.0 {
            break;
        }
        let c = C64::from_polar(w, phi * t as f64);
        let m = p.matrix();
        for col in 0..n {
            for row in 0..n {
                g[(row, col)] += c * m[(row, col)] + c.conj() * m[(col, row)].conj();
            }
        }
        if t < tmax {
            p = u * &p;
        }
    }
    Ok(TorusOperator::from_matrix(g))
}

/// Eigenphases of a unitary operator in `[0, 2 pi)`, sorted ascending.
pub fn eigenphases(u: &TorusOperator) -> Vec<f64> {
    let schur = Schur::new(u.matrix().clone());
    let (_, t) = schur.unpack();
    let mut out: Vec<f64> = t.diagonal().iter().map(|z| z.arg().rem_euclid(2.0 * PI)).collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

/// Smallest `k <= kmax` with `U^k = e^{i phase} 1` within `tol`, together
/// with that phase factor.
pub fn nilpotency_period(u: &TorusOperator, kmax: usize, tol: f64) -> Option<(usize, C64)> {
    let n = u.dim();
    let mut p = u.clone();
    for k in 1..=kmax {
        let c = p.get(0, 0);
        if (c.norm() - 1.0).abs() <= tol {
            let id = TorusOperator::identity(n).scale(c);
            if p.max_abs_diff(&id) <= tol {
                return Some((k, c));
            }
        }
        p = u * &p;
    }
    None
}
