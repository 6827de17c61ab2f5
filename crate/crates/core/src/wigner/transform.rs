use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rustfft::FftPlannerScalar;

use super::{Provenance, SymbolGrid, WignerGrid};
use crate::error::{Error, Result};
use crate::quantum::{
    default_spectral_cutoff, spectral_operator, StateVector, TorusOperator, TorusSpace, C64,
};

/// Tolerance of the trace sum rule and of the half-lattice spot checks.
pub const SUM_RULE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-10;
const SPOT_CHECKS: usize = 20;

/// Base-lattice symbol `sum_j e^{i pi A (B - 2j)/N} v(B mod N, j)` for all
/// `A = 2a`, `B = 2b`. For fixed `B` the `j` sum is a forward DFT evaluated
/// at frequency `A mod N`.
fn base_symbol(space: &TorusSpace, v: impl Fn(usize, usize) -> C64) -> Vec<C64> {
    let n = space.dim();
    let fft = FftPlannerScalar::new().plan_fft_forward(n);
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    let mut buf = vec![C64::new(0.0, 0.0); n];
    for b in 0..n {
        let big_b = 2 * b;
        let bm = big_b % n;
        for (j, slot) in buf.iter_mut().enumerate() {
            *slot = v(bm, j);
        }
        fft.process(&mut buf);
        for a in 0..n {
            let big_a = 2 * a;
            let ph = space.phase_pi_over_n((big_a * big_b) as i64);
            out[a * n + b] = ph * buf[big_a % n];
        }
    }
    out
}

fn check_state(space: &TorusSpace, psi: &StateVector) -> Result<()> {
    if psi.dim() != space.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has length {}, space has N = {}",
            psi.dim(),
            space.dim()
        )));
    }
    let ns = psi.norm_sqr();
    if (ns - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized(ns));
    }
    Ok(())
}

fn real_grid(space: &TorusSpace, sym: &[C64], provenance: Provenance) -> Result<WignerGrid> {
    let n = space.dim();
    let scale = sym.iter().map(|z| z.re.abs()).fold(1.0, f64::max);
    let imag = sym.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > IMAG_TOL * scale {
        return Err(Error::Invariant(format!(
            "imaginary residue {imag:.3e} of a Hermitian symbol exceeds tolerance"
        )));
    }
    Ok(WignerGrid::from_base(n, provenance, |a, b| sym[a * n + b].re))
}

/// Wigner function `W(x) = Tr[R_x |psi><psi|]` of a normalized state on the
/// full half-lattice grid.
///
/// Checks the trace sum rule and compares the extended grid with direct
/// evaluation at a fixed pseudo-random sample of half-lattice points.
pub fn wigner_of_state(space: &TorusSpace, psi: &StateVector) -> Result<WignerGrid> {
    check_state(space, psi)?;
    let n = space.dim();
    let amps = psi.amplitudes();
    let sym = base_symbol(space, |bm, j| amps[j] * amps[(bm + n - j) % n].conj());
    let grid = real_grid(space, &sym, Provenance::Exact)?;

    let sum = grid.base_sum();
    if (sum - 1.0).abs() > SUM_RULE_TOL {
        return Err(Error::Invariant(format!("Wigner sum rule gives {sum}, expected 1")));
    }
    let mut rng = StdRng::seed_from_u64(n as u64);
    for _ in 0..SPOT_CHECKS {
        let a = rng.random_range(0..2 * n);
        let b = rng.random_range(0..2 * n);
        let direct = wigner_at(space, psi, a as i64, b as i64);
        if (direct.re - grid.get(a, b)).abs() > SUM_RULE_TOL {
            return Err(Error::Invariant(format!(
                "half-lattice value at ({a}, {b}) disagrees with direct evaluation"
            )));
        }
    }
    Ok(grid)
}

/// Complex Weyl symbol `Tr[R_x A]` on the base lattice.
pub fn weyl_symbol_of_operator(space: &TorusSpace, op: &TorusOperator) -> Result<SymbolGrid> {
    let n = space.dim();
    if op.dim() != n {
        return Err(Error::DimensionMismatch(format!("operator is {0}x{0}, N = {n}", op.dim())));
    }
    let m = op.matrix();
    let sym = base_symbol(space, |bm, j| m[(j, (bm + n - j) % n)]);
    Ok(SymbolGrid::new(n, sym))
}

/// Real symbol grid of a Hermitian operator, with the imaginary residue and
/// trace sum rule checked.
pub fn wigner_of_hermitian(
    space: &TorusSpace,
    op: &TorusOperator,
    provenance: Provenance,
) -> Result<WignerGrid> {
    let sym = weyl_symbol_of_operator(space, op)?;
    let grid = real_grid(space, sym.values(), provenance)?;
    let tr = op.trace().re;
    let sum = grid.base_sum();
    if (sum - tr).abs() > SUM_RULE_TOL * tr.abs().max(1.0) {
        return Err(Error::Invariant(format!("symbol sum rule gives {sum}, trace is {tr}")));
    }
    Ok(grid)
}

/// Symbol grid of the damped spectral operator. `tmax = None` picks the
/// cutoff where the damping weight falls below `1e-12`.
pub fn spectral_wigner(
    space: &TorusSpace,
    u: &TorusOperator,
    phi: f64,
    tau: f64,
    tmax: Option<u32>,
) -> Result<WignerGrid> {
    let tmax = tmax.unwrap_or_else(|| default_spectral_cutoff(tau));
    let g = spectral_operator(space, u, phi, tau, tmax)?;
    wigner_of_hermitian(space, &g, Provenance::Spectral)
}

/// Direct `O(N^3)` evaluation of the base-lattice Wigner function,
/// `W(a, b) = sum_j exp[i 4 pi a (b - j) / N] psi_j conj(psi_{2b - j})`,
/// extended by the sign rule. No checks.
pub fn wigner_naive(space: &TorusSpace, psi: &StateVector) -> WignerGrid {
    let n = space.dim();
    let ni = n as i64;
    let amps = psi.amplitudes();
    WignerGrid::from_base(n, Provenance::Exact, |a, b| {
        let (a, b) = (a as i64, b as i64);
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..ni {
            let k = (2 * b - j).rem_euclid(ni) as usize;
            acc += space.phase_pi_over_n(4 * a * (b - j)) * amps[j as usize] * amps[k].conj();
        }
        acc.re
    })
}

/// `Tr[R_x |psi><psi|]` at the half-lattice point `(A/2N, B/2N)`.
pub fn wigner_at(space: &TorusSpace, psi: &StateVector, a2: i64, b2: i64) -> C64 {
    let ni = space.dim() as i64;
    let amps = psi.amplitudes();
    (0..ni)
        .map(|j| {
            let k = (b2 - j).rem_euclid(ni) as usize;
            space.phase_pi_over_n(a2 * (b2 - 2 * j)) * amps[j as usize] * amps[k].conj()
        })
        .sum()
}

/// `Tr[R_x A]` at the half-lattice point `(A/2N, B/2N)`.
pub fn weyl_symbol_at(space: &TorusSpace, op: &TorusOperator, a2: i64, b2: i64) -> C64 {
    let ni = space.dim() as i64;
    (0..ni)
        .map(|j| {
            let k = (b2 - j).rem_euclid(ni) as usize;
            space.phase_pi_over_n(a2 * (b2 - 2 * j)) * op.get(j as usize, k)
        })
        .sum()
}
