use std::f64::consts::PI;

use num_rational::Rational64;

use super::SymbolGrid;
use crate::classical::{center_action_exact, coset_representatives, CatMap, CayleyMatrix, RatPoint};
use crate::error::Result;
use crate::quantum::{TorusSpace, C64};

/// Weyl symbol of `U^l` from the center generating function of `M^l`:
///
/// `U^l(x) = i^l |det(M^l + 1)|^{-1/2} sum_m exp[2 pi i N S_l(x, m)]`
///
/// where `m` runs over one representative of each class of
/// `Z^2 / (M^l + 1) Z^2`. Each term depends only on the class of `m`
/// when `x` is on the base lattice, so the finite sum is exact. The phase
/// `i^l` matches the principal branch used by [`crate::quantum::propagator`].
pub fn weyl_propagator_closed_form(space: &TorusSpace, map: &CatMap, l: u32) -> Result<SymbolGrid> {
    let ml = map.power(l);
    let cayley = CayleyMatrix::of(&ml)?;
    let plus = ml.add_scalar(1);
    let reps = coset_representatives(&plus);
    let n = space.dim();
    let ni = n as i64;
    let pref = C64::new(0.0, 1.0).powu(l) / (plus.det().abs() as f64).sqrt();

    let mut vals = Vec::with_capacity(n * n);
    for a in 0..ni {
        for b in 0..ni {
            let x = RatPoint::new(Rational64::new(a, ni), Rational64::new(b, ni));
            let sum: C64 = reps
                .iter()
                .map(|m| {
                    let ns = center_action_exact(&cayley, x, *m) * Rational64::from_integer(ni);
                    let frac = ns - ns.floor();
                    let ang = 2.0 * PI * *frac.numer() as f64 / *frac.denom() as f64;
                    C64::from_polar(1.0, ang)
                })
                .sum();
            vals.push(pref * sum);
        }
    }
    Ok(SymbolGrid::new(n, vals))
}
