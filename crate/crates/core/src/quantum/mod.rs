//! Quantum kinematics on the torus: an `N`-dimensional Hilbert space with
//! position basis `|q_j>`, `q_j = j / N`, and `hbar = 1 / (2 pi N)`.

mod operators;
mod propagator;
mod spectral;
mod states;

pub use operators::{reflection, reflection_half, translation};
pub use propagator::propagator;
pub use spectral::{default_spectral_cutoff, eigenphases, nilpotency_period, spectral_operator};
pub use states::{coherent_state, scar_state, ScarParams, Window, COHERENT_TRUNCATION};

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Torus Hilbert space of odd dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusSpace {
    n: usize,
}

impl TorusSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::EvenDimension(n));
        }
        Ok(TorusSpace { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        1.0 / (2.0 * PI * self.n as f64)
    }

    /// `exp(i pi k / N)` for an integer `k`, reduced exactly modulo `2N`.
    pub(crate) fn phase_pi_over_n(&self, k: i64) -> C64 {
        let two_n = 2 * self.n as i64;
        let r = k.rem_euclid(two_n);
        C64::from_polar(1.0, PI * r as f64 / self.n as f64)
    }
}

/// State in the position basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: DVector<C64>,
}

impl StateVector {
    pub fn from_amplitudes(amps: Vec<C64>) -> Self {
        StateVector {
            amps: DVector::from_vec(amps),
        }
    }

    /// Position eigenstate `|q_j>`.
    pub fn position(space: &TorusSpace, j: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); space.dim()];
        amps[j % space.dim()] = C64::new(1.0, 0.0);
        StateVector::from_amplitudes(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amps.as_slice()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.amps /= C64::new(n, 0.0);
        }
        self
    }

    /// `<self|other>`
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        (&self.amps - &other.amps).norm()
    }

    pub(crate) fn as_dvector(&self) -> &DVector<C64> {
        &self.amps
    }

    pub(crate) fn from_dvector(amps: DVector<C64>) -> Self {
        StateVector { amps }
    }
}

/// Dense operator in the position basis, `entries[(k, j)] = <q_k|A|q_j>`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusOperator {
    entries: DMatrix<C64>,
}

impl TorusOperator {
    pub fn from_matrix(entries: DMatrix<C64>) -> Self {
        assert!(entries.is_square(), "operator matrix must be square");
        TorusOperator { entries }
    }

    pub fn identity(n: usize) -> Self {
        TorusOperator {
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.entries[(k, j)]
    }

    pub fn adjoint(&self) -> TorusOperator {
        TorusOperator {
            entries: self.entries.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn apply(&self, psi: &StateVector) -> StateVector {
        StateVector::from_dvector(&self.entries * psi.as_dvector())
    }

    pub fn pow(&self, e: u32) -> TorusOperator {
        let mut acc = TorusOperator::identity(self.dim());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `max |A^dagger A - 1|` over all entries.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.entries.adjoint() * &self.entries;
        max_abs_diff(&prod, &DMatrix::identity(self.dim(), self.dim()))
    }

    /// `max |A - A^dagger|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        max_abs_diff(&self.entries, &self.entries.adjoint())
    }

    pub fn max_abs_diff(&self, other: &TorusOperator) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }

    pub fn scale(&self, c: C64) -> TorusOperator {
        TorusOperator {
            entries: &self.entries * c,
        }
    }
}

impl Mul for &TorusOperator {
    type Output = TorusOperator;

    fn mul(self, rhs: &TorusOperator) -> TorusOperator {
        TorusOperator {
            entries: &self.entries * &rhs.entries,
        }
    }
}

fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
