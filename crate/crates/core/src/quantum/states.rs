use std::f64::consts::PI;

use super::{StateVector, TorusOperator, TorusSpace, C64};
use crate::error::{Error, Result};

/// Image-sum truncation for torus coherent states.
pub const COHERENT_TRUNCATION: i64 = 4;

/// Periodic coherent state centered at `x = (P, Q)`:
///
/// `<q_k|X> ∝ sum_{|j| <= jc} exp{2 pi N [-(k/N - j - Q)^2 / (2 w^2) + i P (k/N - j - Q/2)]}`
///
/// normalized to unit norm.
pub fn coherent_state(space: &TorusSpace, x: [f64; 2], omega: f64, jc: i64) -> Result<StateVector> {
    if omega <= 0.0 || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!("coherent width must be positive, got {omega}")));
    }
    if jc < 1 {
        return Err(Error::InvalidParameter(format!("image truncation must be >= 1, got {jc}")));
    }
    let n = space.dim();
    let nf = n as f64;
    let [p, q] = x;
    let amps = (0..n)
        .map(|k| {
            let qk = k as f64 / nf;
            (-jc..=jc)
                .map(|j| {
                    let d = qk - j as f64 - q;
                    let re = -2.0 * PI * nf * d * d / (2.0 * omega * omega);
                    let im = 2.0 * PI * nf * p * (qk - j as f64 - q / 2.0);
                    C64::from_polar(re.exp(), im)
                })
                .sum()
        })
        .collect();
    Ok(StateVector::from_amplitudes(amps).normalized())
}

/// Time window of the scar superposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window {
    /// `cos(pi t / T)` for `|t| < T/2`.
    Cosine,
    /// `exp(-|t| eps / hbar)` for `|t| <= T/2`.
    Exponential { eps: f64 },
}

impl Window {
    pub fn weight(&self, t: i64, big_t: u32, hbar: f64) -> f64 {
        match *self {
            Window::Cosine => {
                if 2 * t.unsigned_abs() >= big_t as u64 {
                    0.0
                } else {
                    (PI * t as f64 / big_t as f64).cos()
                }
            }
            Window::Exponential { eps } => {
                if 2 * t.unsigned_abs() > big_t as u64 {
                    0.0
                } else {
                    (-(t.abs() as f64) * eps / hbar).exp()
                }
            }
        }
    }
}

/// Parameters shared by the exact and semiclassical scar constructions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScarParams {
    /// Periodic point `(P, Q)`.
    pub point: [f64; 2],
    /// Quasi-energy in `[0, 2 pi)`.
    pub phi: f64,
    /// Even window length in map steps.
    pub big_t: u32,
    pub window: Window,
}

impl ScarParams {
    pub fn new(point: [f64; 2], phi: f64, big_t: u32) -> Self {
        ScarParams {
            point,
            phi: phi.rem_euclid(2.0 * PI),
            big_t,
            window: Window::Cosine,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.big_t < 2 || self.big_t % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "window T must be an even integer >= 2, got {}",
                self.big_t
            )));
        }
        if let Window::Exponential { eps } = self.window {
            if eps <= 0.0 || !eps.is_finite() {
                return Err(Error::InvalidParameter(format!("window eps must be positive, got {eps}")));
            }
        }
        Ok(())
    }

    /// `2 round(ln(2 pi N) / (2 lambda))`, never below 2.
    pub fn default_window(space: &TorusSpace, lambda: f64) -> u32 {
        let half = ((2.0 * PI * space.dim() as f64).ln() / (2.0 * lambda)).round();
        (2.0 * half).max(2.0) as u32
    }
}

/// `psi ∝ sum_t e^{i phi t} w(t) U^t |X>`, built by stepping `U` and `U^dagger`
/// from the coherent state, normalized to unit norm.
pub fn scar_state(space: &TorusSpace, u: &TorusOperator, params: &ScarParams) -> Result<StateVector> {
    params.validate()?;
    if u.dim() != space.dim() {
        return Err(Error::DimensionMismatch(format!(
            "propagator is {}x{}, space has N = {}",
            u.dim(),
            u.dim(),
            space.dim()
        )));
    }
    let hbar = space.hbar();
    let x = coherent_state(space, params.point, 1.0, COHERENT_TRUNCATION)?;
    let ud = u.adjoint();
    let w0 = params.window.weight(0, params.big_t, hbar);
    let mut acc = x.as_dvector() * C64::new(w0, 0.0);
    let mut fwd = x.clone();
    let mut bwd = x;
    let half = params.big_t as i64 / 2;
    for t in 1..=half {
        let w = params.window.weight(t, params.big_t, hbar);
        if w == 0.0 {
            break;
        }
        fwd = u.apply(&fwd);
        bwd = ud.apply(&bwd);
        let ph = C64::from_polar(w, params.phi * t as f64);
        acc += fwd.as_dvector() * ph + bwd.as_dvector() * ph.conj();
    }
    Ok(StateVector::from_dvector(acc).normalized())
}
