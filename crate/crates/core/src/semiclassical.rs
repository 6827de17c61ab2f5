//! Closed-form semiclassical scar Wigner function near a hyperbolic
//! periodic point: a discrete double time sum of Gaussian-damped hyperbolic
//! fringes, periodized over the torus.

use std::f64::consts::PI;

use num_rational::Rational64;

use crate::classical::{stability, CatMap, PeriodicOrbit, RatPoint};
use crate::error::{Error, Result};
use crate::quantum::{TorusSpace, Window};
use crate::wigner::{Provenance, WignerGrid};

/// Default Maslov phase per map step.
pub const DEFAULT_ALPHA: f64 = PI / 2.0;

/// Local hyperbolic frame at a periodic point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScHyperbolicFrame {
    pub x: [f64; 2],
    /// Stability exponent of one traversal of the orbit.
    pub lambda: f64,
    pub xi_u: [f64; 2],
    pub xi_s: [f64; 2],
    pub xi_u2: f64,
    pub xi_s2: f64,
    pub dot_us: f64,
    /// Phase per traversal, in `[0, 2 pi)`.
    pub theta: f64,
}

impl ScHyperbolicFrame {
    /// Frame at `x` on `orbit`. `alpha` is the Maslov phase per map step;
    /// exponent and phase are scaled by the orbit period.
    pub fn new(
        map: &CatMap,
        orbit: &PeriodicOrbit,
        x: RatPoint,
        space: &TorusSpace,
        phi: f64,
        alpha: f64,
    ) -> Result<Self> {
        if !orbit.contains(&x) {
            return Err(Error::InvalidParameter(format!("{x} is not on the given orbit")));
        }
        let h = stability(map, 1)?;
        let l = orbit.period as f64;
        Ok(ScHyperbolicFrame {
            x: x.to_f64(),
            lambda: l * h.lambda,
            xi_u: h.xi_u,
            xi_s: h.xi_s,
            xi_u2: h.xi_u2,
            xi_s2: h.xi_s2,
            dot_us: h.dot_us,
            theta: bohr_phase(space, orbit, phi, l * alpha),
        })
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta.rem_euclid(2.0 * PI);
        self
    }
}

/// `theta = (phi + 2 pi N S_X + alpha) mod 2 pi`, with `N S_X` reduced
/// exactly.
pub fn bohr_phase(space: &TorusSpace, orbit: &PeriodicOrbit, phi: f64, alpha: f64) -> f64 {
    (phi + action_phase(space, orbit.action) + alpha).rem_euclid(2.0 * PI)
}

/// Quasi-energy that gives the requested `theta`.
pub fn phi_for_theta(space: &TorusSpace, orbit: &PeriodicOrbit, theta: f64, alpha: f64) -> f64 {
    (theta - action_phase(space, orbit.action) - alpha).rem_euclid(2.0 * PI)
}

fn action_phase(space: &TorusSpace, action: Rational64) -> f64 {
    let ns = action * Rational64::from_integer(space.dim() as i64);
    let frac = ns - ns.floor();
    2.0 * PI * *frac.numer() as f64 / *frac.denom() as f64
}

/// `x - X` wrapped to `[-1/2, 1/2)^2`.
pub fn minimal_image(x: [f64; 2], center: [f64; 2]) -> [f64; 2] {
    let w = |d: f64| (d + 0.5).rem_euclid(1.0) - 0.5;
    [w(x[0] - center[0]), w(x[1] - center[1])]
}

fn wedge(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Coordinates `(p', q')` with `x - X = q' xi_s + p' xi_u`, using the
/// minimal image of `x - X`.
pub fn stable_unstable_coords(frame: &ScHyperbolicFrame, x: [f64; 2]) -> (f64, f64) {
    frame_coords(frame, minimal_image(x, frame.x))
}

/// `(p', q')` of a displacement, `p' = d ^ xi_s`, `q' = xi_u ^ d`.
pub fn frame_coords(frame: &ScHyperbolicFrame, d: [f64; 2]) -> (f64, f64) {
    (wedge(d, frame.xi_s), wedge(frame.xi_u, d))
}

/// Evaluation parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScParams {
    pub frame: ScHyperbolicFrame,
    /// Even window length in traversals of the orbit.
    pub big_t: u32,
    pub window: Window,
    /// Image range `J`: half-period shifts whose displaced coordinates lie
    /// within `J + 1/2` of the pattern center are summed.
    pub images: u32,
    pub n: usize,
}

impl ScParams {
    pub fn new(frame: ScHyperbolicFrame, big_t: u32, n: usize) -> Self {
        ScParams {
            frame,
            big_t,
            window: Window::Cosine,
            images: 1,
            n,
        }
    }

    pub fn hbar(&self) -> f64 {
        1.0 / (2.0 * PI * self.n as f64)
    }

    fn terms(&self) -> Vec<Term> {
        let hbar = self.hbar();
        let half = self.big_t as i64 / 2;
        let f = &self.frame;
        let times: Vec<(i64, f64)> = (-half..=half)
            .map(|t| (t, self.window.weight(t, self.big_t, hbar)))
            .filter(|(_, w)| *w != 0.0)
            .collect();
        let mut out = Vec::with_capacity(times.len() * times.len());
        for &(t, wt) in &times {
            for &(t2, wt2) in &times {
                let tau = (t - t2) as f64;
                let sigma = (t + t2) as f64;
                let ch = (0.5 * f.lambda * tau).cosh();
                let g = 1.0 / (hbar * ch * ch);
                out.push(Term {
                    amp: wt * wt2 / (2.0 * ch),
                    theta_tau: f.theta * tau,
                    shear: 2.0 / hbar * (0.5 * f.lambda * tau).tanh(),
                    cpp: g * (-f.lambda * sigma).exp() * f.xi_u2,
                    cqq: g * (f.lambda * sigma).exp() * f.xi_s2,
                    cpq: g * 2.0 * f.dot_us,
                });
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    amp: f64,
    theta_tau: f64,
    shear: f64,
    cpp: f64,
    cqq: f64,
    cpq: f64,
}

impl Term {
    fn envelope(&self, p: f64, q: f64) -> f64 {
        (-(p * p * self.cpp + q * q * self.cqq + p * q * self.cpq)).exp()
    }

    fn phase(&self, p: f64, q: f64) -> f64 {
        self.theta_tau + self.shear * p * q
    }
}

/// Plane semiclassical scar Wigner function at frame coordinates
/// `(p', q')`:
///
/// `sum_{t,t'} cos[theta tau + (2/hbar) p'q' tanh(lambda tau/2)] w_t w_t' / (2 cosh(lambda tau/2))
///   * exp{-[p'^2 e^{-lambda s} xi_u^2 + q'^2 e^{lambda s} xi_s^2 + 2 p'q' xi_u.xi_s] / (hbar cosh^2(lambda tau/2))}`
///
/// with `tau = t - t'`, `s = t + t'`. Terms `(t, t')` and `(t', t)` are
/// complex conjugates, so the real form is the full sum.
pub fn sc_scar_plane(params: &ScParams, p: f64, q: f64) -> f64 {
    plane_sum(&params.terms(), p, q)
}

fn plane_sum(terms: &[Term], p: f64, q: f64) -> f64 {
    terms
        .iter()
        .map(|t| t.amp * t.phase(p, q).cos() * t.envelope(p, q))
        .sum()
}

/// Unsymmetrized complex double sum, for checking realness.
pub fn sc_scar_plane_complex(params: &ScParams, p: f64, q: f64) -> num_complex::Complex64 {
    params
        .terms()
        .iter()
        .map(|t| num_complex::Complex64::from_polar(t.amp * t.envelope(p, q), t.phase(p, q)))
        .sum()
}

/// Torus value at a half-lattice point `x = (A/2N, B/2N)`:
///
/// `sum_{k,j} (-1)^{jA + kB + jk} W(x - X + (k, j)/2)`
///
/// with `x - X` reduced to its minimal image and the shifted displacement
/// kept inside the box of half-width `J + 1/2`. For points off the
/// half-lattice the parities of the nearest indices are used.
pub fn sc_scar_torus(params: &ScParams, x: [f64; 2]) -> f64 {
    let s = 2.0 * params.n as f64;
    let parity = |v: f64| ((v.rem_euclid(1.0) * s).round() as i64).rem_euclid(2);
    torus_sum(params, &params.terms(), x, [parity(x[0]), parity(x[1])])
}

fn torus_sum(params: &ScParams, terms: &[Term], x: [f64; 2], parity: [i64; 2]) -> f64 {
    let d = minimal_image(x, params.frame.x);
    let (ks, js) = (shift_range(d[0], params.images), shift_range(d[1], params.images));
    let mut acc = 0.0;
    for k in ks {
        for j in js.clone() {
            let shifted = [d[0] + 0.5 * k as f64, d[1] + 0.5 * j as f64];
            let (p, q) = frame_coords(&params.frame, shifted);
            let v = plane_sum(terms, p, q);
            let odd = (j * parity[0] + k * parity[1] + j * k).rem_euclid(2) == 1;
            acc += if odd { -v } else { v };
        }
    }
    acc
}

/// Half-period shifts `k` with `|d + k/2| <= J + 1/2`. The resulting set
/// of displacements is the same around every pattern center.
fn shift_range(d: f64, images: u32) -> std::ops::RangeInclusive<i64> {
    let r = images as f64 + 0.5 + 1e-12;
    let lo = (2.0 * (-r - d)).ceil() as i64;
    let hi = (2.0 * (r - d)).floor() as i64;
    lo..=hi
}

/// Semiclassical grid: [`sc_scar_torus`] on the base lattice, extended by
/// the half-shift sign rule.
pub fn sc_grid(params: &ScParams, space: &TorusSpace) -> Result<WignerGrid> {
    if params.n != space.dim() {
        return Err(Error::DimensionMismatch(format!(
            "parameters for N = {}, space has N = {}",
            params.n,
            space.dim()
        )));
    }
    if params.big_t < 2 || params.big_t % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "window T must be an even integer >= 2, got {}",
            params.big_t
        )));
    }
    let n = space.dim();
    let terms = params.terms();
    let nf = n as f64;
    Ok(WignerGrid::from_base(n, Provenance::Semiclassical, |a, b| {
        torus_sum(params, &terms, [a as f64 / nf, b as f64 / nf], [0, 0])
    }))
}

/// Largest plane value over the outermost ring of image shifts at the
/// sample points, relative to the plane value at `X`. Small values mean
/// the image range is sufficient.
pub fn image_tail(params: &ScParams, samples: &[[f64; 2]]) -> f64 {
    let terms = params.terms();
    let center = plane_sum(&terms, 0.0, 0.0).abs().max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for x in samples {
        let d = minimal_image(*x, params.frame.x);
        let (ks, js) = (shift_range(d[0], params.images), shift_range(d[1], params.images));
        for k in ks.clone() {
            for j in js.clone() {
                let edge = k == *ks.start() || k == *ks.end() || j == *js.start() || j == *js.end();
                if !edge {
                    continue;
                }
                let (p, q) = frame_coords(&params.frame, [d[0] + 0.5 * k as f64, d[1] + 0.5 * j as f64]);
                worst = worst.max(plane_sum(&terms, p, q).abs());
            }
        }
    }
    worst / center
}
