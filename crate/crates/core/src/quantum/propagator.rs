use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::{TorusOperator, TorusSpace, C64};
use crate::classical::CatMap;
use crate::error::{Error, Result};

const UNITARITY_TOL: f64 = 1e-10;

/// Quantized cat map in the position basis.
///
/// The kernel is the quadratic form generated by
/// `F(q, q') = (m11 q'^2 - 2 q q' + m22 q^2) / (2 m21)`:
///
/// `<q_k|U|q_j> = c * sum_n exp[i pi (m11 k^2 - 2 k (j + nN) + m22 (j + nN)^2) / (N m21)]`
///
/// with `n` running over `0..|m21|`. For `[[2, 3], [1, 2]]` this is
/// `(i/N)^{1/2} exp[(2 pi i / N)(k^2 - jk + j^2)]` with the principal branch
/// of the square root. For other maps `c` is fixed by unitarity and its
/// phase by the same branch convention.
pub fn propagator(space: &TorusSpace, map: &CatMap) -> Result<TorusOperator> {
    let [m11, _m12, m21, m22] = map.entries();
    if m21 == 0 {
        return Err(Error::UnsupportedKernel(format!(
            "map {map} has m21 = 0; the position kernel needs m21 != 0"
        )));
    }
    let n = space.dim();
    let kernel = Kernel { n: n as i64, m11, m21, m22 };

    // torus periodicity of the kernel in both indices
    for (k, j) in [(0, 0), (1, 0), (0, 1), (1, 2), (n as i64 - 1, 2)] {
        let base = kernel.raw(k, j);
        let dk = (kernel.raw(k + n as i64, j) - base).norm();
        let dj = (kernel.raw(k, j + n as i64) - base).norm();
        if dk.max(dj) > 1e-9 * (1.0 + base.norm()) {
            return Err(Error::UnsupportedKernel(format!(
                "map {map}: position kernel is not periodic on the N = {n} torus \
                 (needs m11, m22 even when |m21| = 1)"
            )));
        }
    }

    let mut m = DMatrix::from_fn(n, n, |k, j| kernel.raw(k as i64, j as i64));
    let col_norm: f64 = m.column(0).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if col_norm == 0.0 {
        return Err(Error::UnsupportedKernel(format!("map {map}: vanishing kernel at N = {n}")));
    }
    let branch = C64::from_polar(1.0, m21.signum() as f64 * PI / 4.0);
    m *= branch / col_norm;

    let u = TorusOperator::from_matrix(m);
    let res = u.unitarity_residual();
    if res > UNITARITY_TOL {
        return Err(Error::UnsupportedKernel(format!(
            "map {map}: kernel is not unitary at N = {n} (residual {res:.3e})"
        )));
    }
    Ok(u)
}

struct Kernel {
    n: i64,
    m11: i64,
    m21: i64,
    m22: i64,
}

impl Kernel {
    /// Unnormalized kernel, phases reduced exactly in integer arithmetic.
    fn raw(&self, k: i64, j: i64) -> C64 {
        let modulus = 2 * self.n as i128 * self.m21.abs() as i128;
        let denom = (self.n * self.m21) as f64;
        let (k, m11, m22) = (k as i128, self.m11 as i128, self.m22 as i128);
        let mut acc = C64::new(0.0, 0.0);
        for s in 0..self.m21.abs() {
            let jj = (j + s * self.n) as i128;
            let e = (m11 * k * k - 2 * k * jj + m22 * jj * jj).rem_euclid(modulus);
            acc += C64::from_polar(1.0, PI * e as f64 / denom);
        }
        acc
    }
}
