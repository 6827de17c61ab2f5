//! Classical layer: integer symplectic maps of the 2-torus, their stability
//! data, periodic orbits and the quadratic center generating function.
//!
//! Phase-space points are ordered `(p, q)` throughout, and the map matrix
//! acts on that column vector: `p' = m11 p + m12 q`, `q' = m21 p + m22 q`.

mod lattice;
mod orbits;
mod stability;

pub use lattice::coset_representatives;
pub use orbits::{orbit_through, periodic_points, PeriodicOrbit, RatPoint};
pub use stability::{
    center_action, center_action_exact, det_identity_check, stability, CayleyMatrix,
    HyperbolicData,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 2x2 integer matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IMat2(pub [[i64; 2]; 2]);

impl IMat2 {
    pub const IDENTITY: IMat2 = IMat2([[1, 0], [0, 1]]);

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul(&self, other: &IMat2) -> IMat2 {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        IMat2(out)
    }

    pub fn pow(&self, mut e: u32) -> IMat2 {
        let mut base = *self;
        let mut acc = IMat2::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self + s * 1`
    pub fn add_scalar(&self, s: i64) -> IMat2 {
        let mut m = self.0;
        m[0][0] += s;
        m[1][1] += s;
        IMat2(m)
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Adjugate, so that `self * adj = det * 1`.
    pub fn adjugate(&self) -> IMat2 {
        let m = &self.0;
        IMat2([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let m = &self.0;
        [
            [m[0][0] as f64, m[0][1] as f64],
            [m[1][0] as f64, m[1][1] as f64],
        ]
    }
}

/// A hyperbolic cat map: an integer matrix with unit determinant and
/// `|trace| > 2`, acting on the unit torus modulo 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CatMap {
    matrix: IMat2,
}

impl CatMap {
    pub fn new(m11: i64, m12: i64, m21: i64, m22: i64) -> Result<Self> {
        let matrix = IMat2([[m11, m12], [m21, m22]]);
        if matrix.det() != 1 {
            return Err(Error::NotSymplectic(matrix.det()));
        }
        if matrix.trace().abs() <= 2 {
            return Err(Error::NonHyperbolic(matrix.trace().abs()));
        }
        Ok(CatMap { matrix })
    }

    /// The map `[[2, 3], [1, 2]]` with equal diagonal entries, used as the
    /// reference example throughout the crate.
    pub fn reference() -> Self {
        CatMap {
            matrix: IMat2([[2, 3], [1, 2]]),
        }
    }

    pub fn matrix(&self) -> IMat2 {
        self.matrix
    }

    pub fn entries(&self) -> [i64; 4] {
        let m = self.matrix.0;
        [m[0][0], m[0][1], m[1][0], m[1][1]]
    }

    pub fn trace(&self) -> i64 {
        self.matrix.trace()
    }

    /// Equal diagonal entries imply time-reversal symmetry and a diagonal
    /// Cayley matrix.
    pub fn is_time_reversal_symmetric(&self) -> bool {
        self.matrix.0[0][0] == self.matrix.0[1][1]
    }

    pub fn power(&self, t: u32) -> IMat2 {
        self.matrix.pow(t)
    }
}

impl fmt::Display for CatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "{a} {b} {c} {d}")
    }
}

impl FromStr for CatMap {
    type Err = Error;

    /// Parses four whitespace separated integers in row-major order.
    fn from_str(s: &str) -> Result<Self> {
        let vals: Vec<i64> = s
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Config(format!("map entry `{t}` is not an integer")))
            })
            .collect::<Result<_>>()?;
        if vals.len() != 4 {
            return Err(Error::Config(format!(
                "map needs 4 integers (row-major), got {}",
                vals.len()
            )));
        }
        CatMap::new(vals[0], vals[1], vals[2], vals[3])
    }
}
