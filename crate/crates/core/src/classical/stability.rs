use num_rational::Rational64;

use super::{CatMap, IMat2, RatPoint};
use crate::error::{Error, Result};

/// Symmetric rational matrix `B` with `J B = (1 - M)(1 + M)^{-1}`,
/// `J = [[0, -1], [1, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CayleyMatrix(pub [[Rational64; 2]; 2]);

impl CayleyMatrix {
    /// Cayley matrix of an integer symplectic matrix.
    pub fn of(m: &IMat2) -> Result<Self> {
        let plus = m.add_scalar(1);
        let d = plus.det();
        if d == 0 {
            return Err(Error::CayleyUndefined(1));
        }
        // (1 - M) adj(1 + M) / det(1 + M)
        let minus = IMat2([[1 - m.0[0][0], -m.0[0][1]], [-m.0[1][0], 1 - m.0[1][1]]]);
        let c = minus.mul(&plus.adjugate());
        // B = J^{-1} C = -J C ; -J = [[0, 1], [-1, 0]]
        let b = [[c.0[1][0], c.0[1][1]], [-c.0[0][0], -c.0[0][1]]];
        let r = |v: i64| Rational64::new(v, d);
        Ok(CayleyMatrix([
            [r(b[0][0]), r(b[0][1])],
            [r(b[1][0]), r(b[1][1])],
        ]))
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        let b = &self.0;
        [[f(b[0][0]), f(b[0][1])], [f(b[1][0]), f(b[1][1])]]
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    /// Inverse Cayley transform `(1 - J B)(1 + J B)^{-1}`, exact.
    pub fn reconstruct(&self) -> [[Rational64; 2]; 2] {
        let b = &self.0;
        let one = Rational64::from_integer(1);
        let zero = Rational64::from_integer(0);
        // J B = [[-b21, -b22], [b11, b12]]
        let jb = [[-b[1][0], -b[1][1]], [b[0][0], b[0][1]]];
        let lhs = [[one - jb[0][0], zero - jb[0][1]], [zero - jb[1][0], one - jb[1][1]]];
        let rhs = [[one + jb[0][0], jb[0][1]], [jb[1][0], one + jb[1][1]]];
        let det = rhs[0][0] * rhs[1][1] - rhs[0][1] * rhs[1][0];
        let inv = [
            [rhs[1][1] / det, -rhs[0][1] / det],
            [-rhs[1][0] / det, rhs[0][0] / det],
        ];
        let mut out = [[zero; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = lhs[i][0] * inv[0][j] + lhs[i][1] * inv[1][j];
            }
        }
        out
    }
}

/// Stability data of a map power `M^t`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicData {
    /// Power `t` these data refer to.
    pub power: u32,
    /// Stability exponent of `M^t`, i.e. `t` times the per-step exponent.
    pub lambda: f64,
    /// Sign of the eigenvalues of `M` (negative for `trace < -2`).
    pub eigen_sign: f64,
    pub xi_u: [f64; 2],
    pub xi_s: [f64; 2],
    pub cayley: CayleyMatrix,
    pub xi_u2: f64,
    pub xi_s2: f64,
    pub dot_us: f64,
}

impl HyperbolicData {
    /// Per-step stability exponent.
    pub fn lambda_per_step(&self) -> f64 {
        self.lambda / self.power.max(1) as f64
    }
}

pub(crate) fn wedge(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn eigenvector(m: &IMat2, mu: f64) -> [f64; 2] {
    let [[m11, m12], [m21, m22]] = m.to_f64();
    if m12 != 0.0 {
        [m12, mu - m11]
    } else {
        [mu - m22, m21]
    }
}

/// Stability exponent, eigendirections and Cayley matrix of `M^t`.
///
/// Eigenvectors are shared by every power. The stable vector is unit length
/// with a non-negative `q` component; the unstable one is scaled so that
/// `xi_u ^ xi_s = 1`.
pub fn stability(map: &CatMap, t: u32) -> Result<HyperbolicData> {
    if t == 0 {
        return Err(Error::InvalidParameter("stability needs t >= 1".into()));
    }
    let m = map.matrix();
    let tr = m.trace();
    if tr.abs() <= 2 {
        return Err(Error::NonHyperbolic(tr.abs()));
    }
    let trf = tr.abs() as f64;
    let growth = 0.5 * (trf + (trf * trf - 4.0).sqrt());
    let lambda = growth.ln();
    let sign = tr.signum() as f64;
    let mu_u = sign * growth;
    let mu_s = sign / growth;

    let mut xi_s = eigenvector(&m, mu_s);
    let ns = (xi_s[0] * xi_s[0] + xi_s[1] * xi_s[1]).sqrt();
    xi_s = [xi_s[0] / ns, xi_s[1] / ns];
    if xi_s[1] < 0.0 || (xi_s[1] == 0.0 && xi_s[0] < 0.0) {
        xi_s = [-xi_s[0], -xi_s[1]];
    }
    let vu = eigenvector(&m, mu_u);
    let w = wedge(vu, xi_s);
    let xi_u = [vu[0] / w, vu[1] / w];

    let cayley = CayleyMatrix::of(&m.pow(t)).map_err(|_| Error::CayleyUndefined(t))?;
    Ok(HyperbolicData {
        power: t,
        lambda: t as f64 * lambda,
        eigen_sign: sign,
        xi_u,
        xi_s,
        cayley,
        xi_u2: xi_u[0] * xi_u[0] + xi_u[1] * xi_u[1],
        xi_s2: xi_s[0] * xi_s[0] + xi_s[1] * xi_s[1],
        dot_us: xi_u[0] * xi_s[0] + xi_u[1] * xi_s[1],
    })
}

/// Center generating function
/// `S(x, m) = x B x + x (B - J) m + m (B + J~) m / 4`, `J~ = [[0, 1], [1, 0]]`.
pub fn center_action(cayley: &CayleyMatrix, x: [f64; 2], m: [i64; 2]) -> f64 {
    let b = cayley.to_f64();
    let mf = [m[0] as f64, m[1] as f64];
    let quad = |a: [f64; 2], mat: [[f64; 2]; 2], c: [f64; 2]| {
        a[0] * (mat[0][0] * c[0] + mat[0][1] * c[1]) + a[1] * (mat[1][0] * c[0] + mat[1][1] * c[1])
    };
    let b_minus_j = [[b[0][0], b[0][1] + 1.0], [b[1][0] - 1.0, b[1][1]]];
    let b_plus_jt = [[b[0][0], b[0][1] + 1.0], [b[1][0] + 1.0, b[1][1]]];
    quad(x, b, x) + quad(x, b_minus_j, mf) + 0.25 * quad(mf, b_plus_jt, mf)
}

/// Exact rational version of [`center_action`].
pub fn center_action_exact(cayley: &CayleyMatrix, x: RatPoint, m: [i64; 2]) -> Rational64 {
    let b = &cayley.0;
    let one = Rational64::from_integer(1);
    let xs = [x.p, x.q];
    let ms = [Rational64::from_integer(m[0]), Rational64::from_integer(m[1])];
    let quad = |a: &[Rational64; 2], mat: &[[Rational64; 2]; 2], c: &[Rational64; 2]| {
        a[0] * (mat[0][0] * c[0] + mat[0][1] * c[1]) + a[1] * (mat[1][0] * c[0] + mat[1][1] * c[1])
    };
    let b_minus_j = [[b[0][0], b[0][1] + one], [b[1][0] - one, b[1][1]]];
    let b_plus_jt = [[b[0][0], b[0][1] + one], [b[1][0] + one, b[1][1]]];
    quad(&xs, b, &xs) + quad(&xs, &b_minus_j, &ms) + quad(&ms, &b_plus_jt, &ms) / 4
}

/// Returns `(|det(M^t + 1)|^{1/2}, 2 cosh(lambda t / 2))`. The left side is
/// computed from integer matrix powers. For negative-trace maps at odd `t`
/// the right side is `2 |sinh(lambda t / 2)|`, the matching closed form.
pub fn det_identity_check(map: &CatMap, t: u32) -> Result<(f64, f64)> {
    let d = map.power(t).add_scalar(1).det();
    let lhs = (d.abs() as f64).sqrt();
    let data = stability(map, 1)?;
    let half = 0.5 * data.lambda * t as f64;
    let rhs = if data.eigen_sign > 0.0 || t % 2 == 0 {
        2.0 * half.cosh()
    } else {
        2.0 * half.sinh().abs()
    };
    Ok((lhs, rhs))
}
