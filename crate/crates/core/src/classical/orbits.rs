use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;

use super::{center_action_exact, coset_representatives, CatMap, CayleyMatrix};
use crate::error::{Error, Result};

/// Exact phase-space point `(p, q)` on the unit torus, wrapped into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub p: Rational64,
    pub q: Rational64,
}

fn wrap(r: Rational64) -> Rational64 {
    r - r.floor()
}

impl RatPoint {
    pub fn new(p: Rational64, q: Rational64) -> Self {
        RatPoint { p: wrap(p), q: wrap(q) }
    }

    pub fn from_ints(pn: i64, pd: i64, qn: i64, qd: i64) -> Self {
        RatPoint::new(Rational64::new(pn, pd), Rational64::new(qn, qd))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        [f(self.p), f(self.q)]
    }

    /// Image under the map modulo 1, together with the integer vector `m`
    /// such that `image = M x - m`.
    pub fn step(&self, map: &CatMap) -> (RatPoint, [i64; 2]) {
        let m = map.matrix().0;
        let mi = |v: i64| Rational64::from_integer(v);
        let p = mi(m[0][0]) * self.p + mi(m[0][1]) * self.q;
        let q = mi(m[1][0]) * self.p + mi(m[1][1]) * self.q;
        let (fp, fq) = (p.floor(), q.floor());
        (
            RatPoint { p: p - fp, q: q - fq },
            [fp.to_integer(), fq.to_integer()],
        )
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A periodic orbit of the map.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicOrbit {
    /// Minimal period.
    pub period: u32,
    /// Orbit points in map order, starting from the lexicographically
    /// smallest one.
    pub points: Vec<RatPoint>,
    /// Winding vector of each point for the requested power `l`:
    /// `m = (M^l - 1) x`, one full traversal of `M^l`.
    pub windings: Vec<[i64; 2]>,
    /// Per-step winding vectors, `points[i+1] = M points[i] - step_windings[i]`.
    pub step_windings: Vec<[i64; 2]>,
    /// Center action of one traversal of the minimal cycle: the sum of the
    /// per-step actions `S(c_i, m_i)` at the step chord centers `c_i`.
    pub action: Rational64,
    /// Stability exponent of the orbit, `period * lambda`.
    pub exponent: f64,
}

impl PeriodicOrbit {
    pub fn contains(&self, x: &RatPoint) -> bool {
        self.points.contains(x)
    }

    pub fn action_f64(&self) -> f64 {
        *self.action.numer() as f64 / *self.action.denom() as f64
    }
}

/// All fixed points of `M^l` on the torus, grouped into orbits of minimal
/// period dividing `l`.
///
/// The fixed points are `x = (M^l - 1)^{-1} m mod 1`, one per coset of
/// `Z^2 / (M^l - 1) Z^2`, so there are exactly `|det(M^l - 1)|` of them.
/// Orbits are sorted by period and then by their first point.
pub fn periodic_points(map: &CatMap, l: u32) -> Result<Vec<PeriodicOrbit>> {
    let step_data = super::stability(map, 1)?;
    let ml = map.power(l.max(1));
    let a = ml.add_scalar(-1);
    let det = a.det();
    let adj = a.adjugate();

    let mut remaining: BTreeSet<RatPoint> = coset_representatives(&a)
        .into_iter()
        .map(|m| {
            let v = adj.apply(m);
            RatPoint::new(Rational64::new(v[0], det), Rational64::new(v[1], det))
        })
        .collect();

    let cayley = CayleyMatrix::of(&map.matrix())?;
    let mut orbits = Vec::new();
    while let Some(start) = remaining.pop_first() {
        let mut points = vec![start];
        let mut step_windings = Vec::new();
        let mut cur = start;
        loop {
            let (next, m) = cur.step(map);
            step_windings.push(m);
            if next == start {
                break;
            }
            remaining.remove(&next);
            points.push(next);
            cur = next;
        }
        let period = points.len() as u32;
        let action = orbit_action(&cayley, &points, &step_windings);
        let windings = points
            .iter()
            .map(|x| {
                let r = |v: Rational64| v.to_integer();
                let am = a.0;
                let w0 = Rational64::from_integer(am[0][0]) * x.p + Rational64::from_integer(am[0][1]) * x.q;
                let w1 = Rational64::from_integer(am[1][0]) * x.p + Rational64::from_integer(am[1][1]) * x.q;
                debug_assert!(w0.is_integer() && w1.is_integer());
                [r(w0), r(w1)]
            })
            .collect();
        orbits.push(PeriodicOrbit {
            period,
            points,
            windings,
            step_windings,
            action,
            exponent: period as f64 * step_data.lambda,
        });
    }
    debug_assert!(orbits.iter().all(|o| l.max(1) % o.period == 0));
    orbits.sort_by(|a, b| (a.period, a.points[0]).cmp(&(b.period, b.points[0])));
    Ok(orbits)
}

/// The periodic orbit of minimal period `<= max_period` through `x`.
///
/// Fails with [`Error::NotPeriodic`] listing the periodic points of period
/// `<= max_period` closest to `x`.
pub fn orbit_through(map: &CatMap, x: RatPoint, max_period: u32) -> Result<PeriodicOrbit> {
    let mut candidates = Vec::new();
    for l in 1..=max_period.max(1) {
        for orbit in periodic_points(map, l)? {
            if orbit.period != l {
                continue;
            }
            if orbit.contains(&x) {
                return Ok(rotate_to(orbit, &x));
            }
            candidates.extend(orbit.points.iter().copied());
        }
    }
    let xf = x.to_f64();
    let dist = |p: &RatPoint| {
        let f = p.to_f64();
        let d = |u: f64, v: f64| {
            let r = (u - v).rem_euclid(1.0);
            r.min(1.0 - r)
        };
        d(f[0], xf[0]).hypot(d(f[1], xf[1]))
    };
    candidates.sort_by(|a, b| dist(a).total_cmp(&dist(b)));
    let nearby = candidates
        .iter()
        .take(4)
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Err(Error::NotPeriodic { p: xf[0], q: xf[1], nearby })
}

/// Same orbit, listed starting from `x`.
fn rotate_to(mut orbit: PeriodicOrbit, x: &RatPoint) -> PeriodicOrbit {
    let i = orbit.points.iter().position(|p| p == x).unwrap_or(0);
    orbit.points.rotate_left(i);
    orbit.windings.rotate_left(i);
    orbit.step_windings.rotate_left(i);
    orbit
}

fn orbit_action(cayley: &CayleyMatrix, points: &[RatPoint], windings: &[[i64; 2]]) -> Rational64 {
    let two = Rational64::from_integer(2);
    let mut total = Rational64::from_integer(0);
    for (i, x) in points.iter().enumerate() {
        let m = windings[i];
        // M x - m is exactly the wrapped next point
        let next = points[(i + 1) % points.len()];
        let center = RatPoint {
            p: (x.p + next.p) / two,
            q: (x.q + next.q) / two,
        };
        total += center_action_exact(cayley, center, m);
    }
    total
}
