//! Discrete Weyl-Wigner symbols on the torus.
//!
//! Symbols are `A_W(x) = Tr[R_x A]` on the half-lattice `x = (a/2N, b/2N)`,
//! `0 <= a, b < 2N`. Only the base lattice (even `a`, `b`) is transformed;
//! the other three quarters follow from
//! `R_{x + (k, j)/2} = (-1)^{jk} R_x` for base `x` and odd `N`.

mod transform;
mod weyl;

pub use transform::{
    spectral_wigner, weyl_symbol_at, weyl_symbol_of_operator, wigner_at, wigner_naive,
    wigner_of_hermitian, wigner_of_state, SUM_RULE_TOL,
};
pub use weyl::weyl_propagator_closed_form;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quantum::C64;

/// Origin of a grid's values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Exact,
    Semiclassical,
    Spectral,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Semiclassical => "semiclassical",
            Provenance::Spectral => "spectral",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact" => Ok(Provenance::Exact),
            "semiclassical" => Ok(Provenance::Semiclassical),
            "spectral" => Ok(Provenance::Spectral),
            other => Err(Error::Parse(format!("unknown provenance `{other}`"))),
        }
    }
}

/// Real symbol on the `2N x 2N` half-lattice, indexed `(a, b)` with
/// `x = (p, q) = (a/2N, b/2N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    n: usize,
    values: Vec<f64>,
    pub provenance: Provenance,
}

impl WignerGrid {
    pub fn zeros(n: usize, provenance: Provenance) -> Self {
        WignerGrid {
            n,
            values: vec![0.0; 4 * n * n],
            provenance,
        }
    }

    pub fn from_values(n: usize, values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if values.len() != 4 * n * n {
            return Err(Error::DimensionMismatch(format!(
                "grid for N = {n} needs {} values, got {}",
                4 * n * n,
                values.len()
            )));
        }
        Ok(WignerGrid { n, values, provenance })
    }

    /// Fills the whole grid from a function of the base indices `(a, b)`,
    /// `0 <= a, b < N`, using the half-shift sign rule.
    pub fn from_base(n: usize, provenance: Provenance, base: impl Fn(usize, usize) -> f64) -> Self {
        let mut g = WignerGrid::zeros(n, provenance);
        for a in 0..n {
            for b in 0..n {
                let v = base(a, b);
                let (a2, b2) = (2 * a, 2 * b);
                let (a2s, b2s) = ((a2 + n) % (2 * n), (b2 + n) % (2 * n));
                g.set(a2, b2, v);
                g.set(a2s, b2, v);
                g.set(a2, b2s, v);
                g.set(a2s, b2s, -v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        2 * self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * 2 * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: f64) {
        let s = 2 * self.n;
        self.values[a * s + b] = v;
    }

    pub fn point(&self, a: usize, b: usize) -> [f64; 2] {
        let s = (2 * self.n) as f64;
        [a as f64 / s, b as f64 / s]
    }

    /// Nearest grid index to a phase-space coordinate.
    pub fn index_of(&self, x: f64) -> usize {
        let s = 2 * self.n;
        ((x.rem_euclid(1.0) * s as f64).round() as usize) % s
    }

    /// `(1/N) sum` over the base sub-lattice, equal to the trace of the
    /// represented operator.
    pub fn base_sum(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..self.n {
            for b in 0..self.n {
                acc += self.get(2 * a, 2 * b);
            }
        }
        acc / self.n as f64
    }

    /// Largest deviation from the half-shift sign rule
    /// `W(x + (k, j)/2) = (-1)^{jk} W(x)` over all base points.
    pub fn sign_rule_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let (a2, b2) = (2 * a, 2 * b);
                let (a2s, b2s) = ((a2 + n) % (2 * n), (b2 + n) % (2 * n));
                let v = self.get(a2, b2);
                worst = worst
                    .max((self.get(a2s, b2) - v).abs())
                    .max((self.get(a2, b2s) - v).abs())
                    .max((self.get(a2s, b2s) + v).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &WignerGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// `(1/N) sum_base W_self W_other`.
    pub fn base_overlap(&self, other: &WignerGrid) -> f64 {
        let mut acc = 0.0;
        for a in 0..self.n {
            for b in 0..self.n {
                acc += self.get(2 * a, 2 * b) * other.get(2 * a, 2 * b);
            }
        }
        acc / self.n as f64
    }
}

/// Complex symbol on the base lattice `x = (a/N, b/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGrid {
    n: usize,
    values: Vec<C64>,
}

impl SymbolGrid {
    pub(crate) fn new(n: usize, values: Vec<C64>) -> Self {
        debug_assert_eq!(values.len(), n * n);
        SymbolGrid { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at `(a/N, b/N)`, indices taken modulo `N`.
    pub fn get(&self, a: i64, b: i64) -> C64 {
        let n = self.n as i64;
        self.values[(a.rem_euclid(n) * n + b.rem_euclid(n)) as usize]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &SymbolGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Distance on the unit torus.
pub fn torus_distance(x: [f64; 2], y: [f64; 2]) -> f64 {
    let d = |u: f64, v: f64| {
        let r = (u - v).rem_euclid(1.0);
        r.min(1.0 - r)
    };
    d(x[0], y[0]).hypot(d(x[1], y[1]))
}

/// The point and its three half-period images.
pub fn pattern_centers(x: [f64; 2]) -> [[f64; 2]; 4] {
    let w = |v: f64| v.rem_euclid(1.0);
    [
        [w(x[0]), w(x[1])],
        [w(x[0] + 0.5), w(x[1])],
        [w(x[0]), w(x[1] + 0.5)],
        [w(x[0] + 0.5), w(x[1] + 0.5)],
    ]
}

/// Root-mean-square of grid values inside the union of discs of radius `r`
/// around `x` and its three half-period images, and over the complement.
pub fn localization_metric(grid: &WignerGrid, x: [f64; 2], r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < 0.25) {
        return Err(Error::InvalidParameter(format!("localization radius must lie in (0, 1/4), got {r}")));
    }
    let centers = pattern_centers(x);
    let (mut sin, mut nin, mut sout, mut nout) = (0.0, 0usize, 0.0, 0usize);
    for a in 0..grid.side() {
        for b in 0..grid.side() {
            let pt = grid.point(a, b);
            let v = grid.get(a, b);
            if centers.iter().any(|c| torus_distance(pt, *c) <= r) {
                sin += v * v;
                nin += 1;
            } else {
                sout += v * v;
                nout += 1;
            }
        }
    }
    let rms = |s: f64, n: usize| if n == 0 { 0.0 } else { (s / n as f64).sqrt() };
    Ok((rms(sin, nin), rms(sout, nout)))
}
