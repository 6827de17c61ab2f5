//! One line per acceptance criterion. Tolerances are fixed here; the test
//! fails if any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use num_rational::Rational64;
use scarlab::classical::{center_action_exact, periodic_points, stability, CatMap, RatPoint};
use scarlab::compare::{compare_grids, Axis, CompareSettings, Localization, Section};
use scarlab::config::{PhiSpec, RunConfig};
use scarlab::pipeline::{scar_grid, semiclassical_grid, spectral_grid, RunSetup};
use scarlab::quantum::{
    coherent_state, propagator, reflection, translation, ScarParams, StateVector, TorusOperator, TorusSpace, C64,
    COHERENT_TRUNCATION,
};
use scarlab::wigner::{weyl_propagator_closed_form, weyl_symbol_of_operator, wigner_naive, wigner_of_state};

const ALGEBRA_TOL: f64 = 1e-10;
const WEYL_TOL: f64 = 1e-9;
const QSYM_TOL: f64 = 1e-9;
const KERNEL_TOL: f64 = 1e-11;
const SUM_RULE_TOL: f64 = 1e-9;
const PEARSON_MIN: f64 = 0.9;
const MIN_SIGN_CHANGES: usize = 3;
const EXPECTED_MARGIN: f64 = 2.0;

struct Tally(Vec<(u32, bool)>);

impl Tally {
    fn line(&mut self, id: u32, pass: bool, what: &str) {
        println!("criterion {id} [{}] {what}", if pass { "PASS" } else { "FAIL" });
        self.0.push((id, pass));
    }
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn c1_classical() -> (bool, String) {
    let map = CatMap::reference();
    let h = stability(&map, 1).unwrap();
    let lam_ok = (h.lambda - (2.0 + 3f64.sqrt()).ln()).abs() <= 1e-12;
    let b = h.cayley.0;
    let b_ok = b == [[rat(-1, 3), rat(0, 1)], [rat(0, 1), rat(1, 1)]];
    let fixed: BTreeSet<RatPoint> = periodic_points(&map, 1).unwrap().iter().flat_map(|o| o.points.clone()).collect();
    let fixed_ok = fixed == [RatPoint::from_ints(0, 1, 0, 1), RatPoint::from_ints(1, 2, 1, 2)].into_iter().collect();
    let orbits: BTreeSet<BTreeSet<RatPoint>> = periodic_points(&map, 2)
        .unwrap()
        .into_iter()
        .filter(|o| o.period == 2)
        .map(|o| o.points.into_iter().collect())
        .collect();
    let listed: BTreeSet<BTreeSet<RatPoint>> = [
        [(0, 1, 1, 2), (1, 2, 0, 1)],
        [(1, 2, 1, 6), (1, 2, 5, 6)],
        [(0, 1, 1, 6), (1, 2, 2, 6)],
        [(0, 1, 5, 6), (1, 2, 4, 6)],
        [(0, 1, 2, 6), (0, 1, 4, 6)],
    ]
    .iter()
    .map(|pair| pair.iter().map(|&(a, b, c, d)| RatPoint::from_ints(a, b, c, d)).collect())
    .collect();
    let orbits_ok = orbits == listed;
    let s = center_action_exact(&h.cayley, RatPoint::from_ints(1, 2, 1, 2), [2, 1]);
    let s_ok = s == rat(3, 4);
    (
        lam_ok && b_ok && fixed_ok && orbits_ok && s_ok,
        format!(
            "classical anchors: lambda {lam_ok}, B = diag(-1/3, 1) {b_ok}, fixed points {fixed_ok}, period-2 orbits {orbits_ok}, S = {s}"
        ),
    )
}

fn c2_algebra() -> (bool, String) {
    let mut worst: f64 = 0.0;
    let mut three_ok = true;
    for n in [3usize, 5, 7] {
        let s = TorusSpace::new(n).unwrap();
        let ni = n as i64;
        let id = TorusOperator::identity(n);
        let rs: Vec<TorusOperator> = (0..ni * ni).map(|i| reflection(&s, i / ni, i % ni)).collect();
        let mut sum = nalgebra::DMatrix::<C64>::zeros(n, n);
        for (i, r) in rs.iter().enumerate() {
            worst = worst.max(r.hermiticity_residual());
            worst = worst.max(r.unitarity_residual());
            worst = worst.max((r * r).max_abs_diff(&id));
            sum += r.matrix();
            for (j, r2) in rs.iter().enumerate() {
                let expect = if i == j { n as f64 } else { 0.0 };
                worst = worst.max(((r * r2).trace() - C64::new(expect, 0.0)).norm());
            }
        }
        worst = worst.max((sum / C64::new(n as f64, 0.0) - id.matrix()).camax());
        let ts: Vec<TorusOperator> = (0..ni * ni).map(|i| translation(&s, i / ni, i % ni)).collect();
        for k1 in 0..ni {
            for j1 in 0..ni {
                for k2 in 0..ni {
                    for j2 in 0..ni {
                        let prod = &ts[(k1 * ni + j1) as usize] * &ts[(k2 * ni + j2) as usize];
                        let phase = C64::from_polar(1.0, PI * (k1 * j2 - j1 * k2) as f64 / n as f64);
                        let r = ts[(((k1 + k2) % ni) * ni + (j1 + j2) % ni) as usize].scale(phase);
                        let d = prod.max_abs_diff(&r).min(prod.max_abs_diff(&r.scale(C64::new(-1.0, 0.0))));
                        worst = worst.max(d);
                    }
                }
            }
        }
        for i2 in 0..rs.len() {
            for i in 0..rs.len() {
                let p2 = &rs[i2] * &rs[i];
                for i1 in 0..rs.len() {
                    let prod = &p2 * &rs[i1];
                    let (a2, b2, a, b, a1, b1) = (
                        i2 as i64 / ni,
                        i2 as i64 % ni,
                        i as i64 / ni,
                        i as i64 % ni,
                        i1 as i64 / ni,
                        i1 as i64 % ni,
                    );
                    let ir = ((a2 - a + a1).rem_euclid(ni) * ni + (b2 - b + b1).rem_euclid(ni)) as usize;
                    let tr = (&prod.adjoint() * &rs[ir]).trace();
                    let w = (a2 - a) * (b1 - b) - (b2 - b) * (a1 - a);
                    let e = C64::from_polar(n as f64, 4.0 * PI * w as f64 / n as f64);
                    let dev = (tr.conj() - e).norm().min((tr.conj() + e).norm());
                    if (tr.norm() - n as f64).abs() > ALGEBRA_TOL || dev > ALGEBRA_TOL * n as f64 {
                        three_ok = false;
                    }
                }
            }
        }
    }
    (
        worst <= ALGEBRA_TOL && three_ok,
        format!("operator algebra N = 3, 5, 7 exhaustive: max residual {worst:.2e}, three-reflection phase match {three_ok}"),
    )
}

fn c3_weyl() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for n in [7usize, 31] {
        let s = TorusSpace::new(n).unwrap();
        let u = propagator(&s, &CatMap::reference()).unwrap();
        let direct = weyl_symbol_of_operator(&s, &u).unwrap();
        let closed = weyl_propagator_closed_form(&s, &CatMap::reference(), 1).unwrap();
        worst = worst.max(direct.max_abs_diff(&closed));
    }
    (worst <= WEYL_TOL, format!("Weyl propagator equals its closed form at N = 7, 31: max deviation {worst:.2e}"))
}

fn c4_qsym() -> (bool, String) {
    let s = TorusSpace::new(31).unwrap();
    let u = propagator(&s, &CatMap::reference()).unwrap();
    let (mut printed, mut corrected): (f64, f64) = (0.0, 0.0);
    for l in 1..=3 {
        let ul = u.pow(l);
        let sym = weyl_symbol_of_operator(&s, &ul).unwrap();
        let inv = weyl_symbol_of_operator(&s, &ul.adjoint()).unwrap();
        for a in 0..31i64 {
            for b in 0..31i64 {
                let v = sym.get(a, b);
                printed = printed.max((v - sym.get(-a, b).conj()).norm()).max((v - sym.get(a, -b).conj()).norm());
                corrected = corrected
                    .max((v - sym.get(-a, b)).norm())
                    .max((v - sym.get(a, -b)).norm())
                    .max((inv.get(a, b) - sym.get(-a, b).conj()).norm());
            }
        }
    }
    println!("  info: U^l(p,q) = U^l(-p,q) = U^l(p,-q) and U^-l(p,q) = conj U^l(-p,q), l = 1..3: max deviation {corrected:.2e}");
    (
        printed <= QSYM_TOL,
        format!("U^l(p,q) = conj U^l(-p,q) = conj U^l(p,-q), l = 1..3, N = 31: max deviation {printed:.2e}"),
    )
}

fn c5_wigner() -> (bool, String) {
    let s = TorusSpace::new(31).unwrap();
    let amps: Vec<C64> = (0..31).map(|k| C64::new((k as f64 * 0.37).sin(), (k as f64 * 1.3).cos())).collect();
    let psi = StateVector::from_amplitudes(amps).normalized();
    let fast = wigner_of_state(&s, &psi).unwrap();
    let kernel = fast.max_abs_diff(&wigner_naive(&s, &psi));

    let mut cfg = RunConfig::default();
    cfg.n = 31;
    cfg.big_t = Some(4);
    let setup = RunSetup::new(&cfg, true).unwrap();
    let scar = scar_grid(&cfg, &setup).unwrap();
    let rules = [
        (fast.base_sum() - 1.0).abs(),
        fast.sign_rule_residual(),
        (scar.base_sum() - 1.0).abs(),
        scar.sign_rule_residual(),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let x = [6.0 / 31.0, 9.0 / 31.0];
    let w = wigner_of_state(&s, &coherent_state(&s, x, 1.0, COHERENT_TRUNCATION).unwrap()).unwrap();
    let v = [w.get(12, 18), w.get(43, 18), w.get(12, 49), w.get(43, 49)];
    let signs_ok = v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0 && v[3] < 0.0;
    (
        kernel <= KERNEL_TOL && rules <= SUM_RULE_TOL && signs_ok,
        format!(
            "Wigner kernel fast vs naive {kernel:.2e}, sum and sign rules {rules:.2e}, coherent images {:.3} {:.3} {:.3} {:.3}",
            v[0], v[1], v[2], v[3]
        ),
    )
}

fn fringe_config(phi: PhiSpec, alpha: f64) -> RunConfig {
    let mut cfg = RunConfig::default();
    cfg.n = 223;
    cfg.point = RatPoint::from_ints(1, 2, 1, 2);
    cfg.big_t = Some(6);
    cfg.phi = phi;
    cfg.alpha = alpha;
    cfg
}

struct FringeRun {
    exact: scarlab::wigner::WignerGrid,
    sc: scarlab::wigner::WignerGrid,
    setup: RunSetup,
    cfg: RunConfig,
    seconds: f64,
}

fn fringe_run(phi: PhiSpec, alpha: f64) -> FringeRun {
    let start = Instant::now();
    let cfg = fringe_config(phi, alpha);
    let setup = RunSetup::new(&cfg, true).unwrap();
    let exact = scar_grid(&cfg, &setup).unwrap();
    let sc = semiclassical_grid(&cfg, &setup).unwrap();
    FringeRun {
        exact,
        sc,
        setup,
        cfg,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn c6_fringes(run: &FringeRun, label: &str) -> (bool, String) {
    let x = run.setup.x;
    let r = compare_grids(&run.exact, &run.sc, &CompareSettings::around(x)).unwrap();
    let sections: Vec<usize> = [&run.exact, &run.sc]
        .iter()
        .flat_map(|g| [Axis::Horizontal, Axis::Vertical].map(|ax| Section::through(g, x, ax, 0.06).sign_changes()))
        .collect();
    let sec_ok = sections.iter().all(|&c| c >= MIN_SIGN_CHANGES);
    (
        r.pearson >= PEARSON_MIN && sec_ok && run.seconds <= 300.0,
        format!(
            "{label}: pearson {:.4} (>= {PEARSON_MIN}), scale fit {:.4}, section sign changes exact h/v {} {} sc h/v {} {}, {:.1} s",
            r.pearson, r.scale_fit, sections[0], sections[1], sections[2], sections[3], run.seconds
        ),
    )
}

fn c7_localization(run: &FringeRun) -> (bool, f64, String) {
    let spec = spectral_grid(&run.cfg, &run.setup).unwrap();
    let scar = Localization::of(&run.exact, run.setup.x, 0.15).unwrap().outside_over_inside();
    let spectral = Localization::of(&spec, run.setup.x, 0.15).unwrap().outside_over_inside();
    let margin = spectral / scar;
    (
        scar < spectral,
        margin,
        format!("outside/inside RMS (r = 0.15): scar {scar:.4} < spectral {spectral:.4} at tau = T/2, margin {margin:.3}"),
    )
}

/// Unnormalized scar amplitude squared, `|sum_t e^{i phi t} w_t U^t |X>|^2`.
fn scar_norm_sqr(cfg: &RunConfig, setup: &RunSetup) -> f64 {
    let u = propagator(&setup.space, &cfg.map).unwrap();
    let ud = u.adjoint();
    let c = coherent_state(&setup.space, setup.x, 1.0, COHERENT_TRUNCATION).unwrap();
    let params = ScarParams::new(setup.x, setup.phi, setup.big_t);
    let hbar = setup.space.hbar();
    let mut acc = c.amplitudes().to_vec();
    let (mut fw, mut bw) = (c.clone(), c);
    for t in 1..=(setup.big_t as i64 / 2) {
        fw = u.apply(&fw);
        bw = ud.apply(&bw);
        let w = params.window.weight(t, setup.big_t, hbar);
        let e = C64::from_polar(w, setup.phi * t as f64);
        for (k, a) in acc.iter_mut().enumerate() {
            *a += e * fw.amplitudes()[k] + e.conj() * bw.amplitudes()[k];
        }
    }
    acc.iter().map(|a| a.norm_sqr()).sum()
}

fn contrast(g: &scarlab::wigner::WignerGrid, x: [f64; 2]) -> f64 {
    [Axis::Horizontal, Axis::Vertical]
        .map(|ax| Section::through(g, x, ax, 0.06).contrast())
        .into_iter()
        .fold(0.0, f64::max)
}

fn c8_bohr(bohr: &FringeRun, anti: &FringeRun) -> (bool, String) {
    let x = bohr.setup.x;
    let (sb, sa) = (contrast(&bohr.sc, x), contrast(&anti.sc, x));
    let (nb, na) = (scar_norm_sqr(&bohr.cfg, &bohr.setup), scar_norm_sqr(&anti.cfg, &anti.setup));
    let (eb, ea) = (contrast(&bohr.exact, x), contrast(&anti.exact, x));
    println!("  info: normalized exact grids: contrast theta=0 {eb:.4}, theta=pi {ea:.4}");
    (
        sb > sa && nb * eb > na * ea,
        format!(
            "fringe contrast theta=0 vs theta=pi: semiclassical {sb:.4} vs {sa:.4}, exact unnormalized {:.4} vs {:.4}",
            nb * eb,
            na * ea
        ),
    )
}

fn c9_determinism() -> (bool, String) {
    let mut outs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        for cmd in ["scar", "semiclassical"] {
            let out = Command::new(env!("CARGO_BIN_EXE_scarlab"))
                .args([cmd, "N=223", "T=6", "phi=antibohr", "emit=csv,pgm"])
                .arg(format!("output={}", dir.path().display()))
                .output()
                .unwrap();
            assert!(out.status.success());
        }
        let files: Vec<Vec<u8>> = ["scar.csv", "semiclassical.csv", "scar.pgm", "semiclassical.pgm"]
            .iter()
            .map(|f| std::fs::read(dir.path().join(f)).unwrap())
            .collect();
        outs.push(files);
    }
    (outs[0] == outs[1], "two runs at N = 223 give byte-identical CSV and PGM files".into())
}

#[test]
fn acceptance() {
    let mut t = Tally(Vec::new());
    let (ok, msg) = c1_classical();
    t.line(1, ok, &msg);
    let (ok, msg) = c2_algebra();
    t.line(2, ok, &msg);
    let (ok, msg) = c3_weyl();
    t.line(3, ok, &msg);
    let (ok, msg) = c4_qsym();
    t.line(4, ok, &msg);
    let (ok, msg) = c5_wigner();
    t.line(5, ok, &msg);

    let literal = fringe_run(PhiSpec::AntiBohr, 0.0);
    let (ok, msg) = c6_fringes(&literal, "N = 223, T = 6, alpha = 0, theta = pi");
    t.line(6, ok, &msg);
    let calibrated = fringe_run(PhiSpec::AntiBohr, PI / 2.0);
    println!("  info: {}", c6_fringes(&calibrated, "alpha = pi/2, theta = pi").1);
    let bohr = fringe_run(PhiSpec::Bohr, PI / 2.0);
    println!("  info: {}", c6_fringes(&bohr, "alpha = pi/2, theta = 0").1);

    let (ok, margin, msg) = c7_localization(&literal);
    t.line(7, ok, &msg);
    println!(
        "  info: margin {margin:.3} vs expected >= {EXPECTED_MARGIN}: {}",
        if margin >= EXPECTED_MARGIN { "met" } else { "not met" }
    );
    let (ok, msg) = c8_bohr(&bohr, &calibrated);
    t.line(8, ok, &msg);
    let (ok, msg) = c9_determinism();
    t.line(9, ok, &msg);

    let failed: Vec<u32> = t.0.iter().filter(|(_, p)| !p).map(|(i, _)| *i).collect();
    println!("acceptance: {} of {} criteria pass", t.0.len() - failed.len(), t.0.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
