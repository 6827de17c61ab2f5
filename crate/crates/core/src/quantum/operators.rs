use nalgebra::DMatrix;

use super::{TorusOperator, TorusSpace, C64};

/// Translation by the chord `(k/N, j/N)`:
/// `T |q_a> = exp[i pi k (2a + j) / N] |q_{a+j}>`.
///
/// The symmetrizing phase makes `T(k, j) T(-k, -j) = 1` and gives the group
/// law `T2 T1 = T(k1+k2, j1+j2) exp[-i pi (k1 j2 - j1 k2) / N]` up to a sign
/// when the indices wrap.
pub fn translation(space: &TorusSpace, k: i64, j: i64) -> TorusOperator {
    let n = space.dim();
    let ni = n as i64;
    let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for a in 0..ni {
        let row = (a + j).rem_euclid(ni) as usize;
        m[(row, a as usize)] = space.phase_pi_over_n(k * (2 * a + j));
    }
    TorusOperator::from_matrix(m)
}

/// Reflection through the base-lattice point `(a/N, b/N)`.
pub fn reflection(space: &TorusSpace, a: i64, b: i64) -> TorusOperator {
    reflection_half(space, 2 * a, 2 * b)
}

/// Reflection through the half-lattice point `(A/2N, B/2N)`:
/// `<q_k|R|q_j> = exp[i pi A (B - 2j) / N] delta_{k, B - j mod N}`.
pub fn reflection_half(space: &TorusSpace, a2: i64, b2: i64) -> TorusOperator {
    let n = space.dim();
    let ni = n as i64;
    let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for j in 0..ni {
        let k = (b2 - j).rem_euclid(ni) as usize;
        m[(k, j as usize)] = space.phase_pi_over_n(a2 * (b2 - 2 * j));
    }
    TorusOperator::from_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    #[test]
    fn zero_translation_is_identity() {
        let s = TorusSpace::new(5).unwrap();
        assert_eq!(translation(&s, 0, 0).max_abs_diff(&TorusOperator::identity(5)), 0.0);
    }

    #[test]
    fn position_shift() {
        let s = TorusSpace::new(5).unwrap();
        let t = translation(&s, 0, 1);
        for a in 0..5 {
            assert_eq!(t.get((a + 1) % 5, a), one());
        }
    }

    #[test]
    fn reflection_is_hermitian_involution_with_unit_trace() {
        for n in [3usize, 5, 7] {
            let s = TorusSpace::new(n).unwrap();
            let id = TorusOperator::identity(n);
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    let r = reflection(&s, a, b);
                    assert!(r.hermiticity_residual() < 1e-12);
                    assert!((&r * &r).max_abs_diff(&id) < 1e-12);
                    assert!((r.trace() - one()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn base_reflection_matches_direct_formula() {
        // exp[i 4 pi a (b - j) / N] delta_{k, 2b - j}
        let n = 7usize;
        let s = TorusSpace::new(n).unwrap();
        let (a, b) = (3i64, 5i64);
        let r = reflection(&s, a, b);
        for j in 0..n as i64 {
            let k = (2 * b - j).rem_euclid(n as i64) as usize;
            let ang = 4.0 * std::f64::consts::PI * (a * (b - j)) as f64 / n as f64;
            assert!((r.get(k, j as usize) - C64::from_polar(1.0, ang)).norm() < 1e-12);
        }
    }
}
