//! End-to-end runs behind the command-line front end: grid builders that
//! return in-memory results, and `cmd_*` wrappers that write files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};

use crate::classical::{orbit_through, periodic_points, stability, det_identity_check, CatMap, PeriodicOrbit};
use crate::compare::{compare_grids, pearson, Axis, CompareSettings, Localization, Region, Section};
use crate::config::{Format, PhiSpec, RunConfig, Scope};
use crate::error::{Error, Result};
use crate::io::{grid_csv, grid_pgm, read_grid_csv, report_text, section_csv, GridHeader};
use crate::quantum::{propagator, scar_state, ScarParams, TorusOperator, TorusSpace};
use crate::semiclassical::{bohr_phase, phi_for_theta, sc_grid, image_tail, ScHyperbolicFrame, ScParams};
use crate::wigner::{spectral_wigner, wigner_of_state, WignerGrid};

use std::f64::consts::PI;

/// Resolved run parameters shared by the pipelines.
#[derive(Clone, Debug)]
pub struct RunSetup {
    pub space: TorusSpace,
    pub x: [f64; 2],
    pub orbit: Option<PeriodicOrbit>,
    /// Orbit period, 1 when the point is not periodic.
    pub l: u32,
    /// Stability exponent of one traversal.
    pub lambda: f64,
    pub phi: f64,
    pub theta: Option<f64>,
    pub big_t: u32,
}

impl RunSetup {
    pub fn new(cfg: &RunConfig, need_orbit: bool) -> Result<Self> {
        let space = TorusSpace::new(cfg.n)?;
        let orbit = match orbit_through(&cfg.map, cfg.point, cfg.max_period) {
            Ok(o) => Some(o),
            Err(e @ Error::NotPeriodic { .. }) => {
                if need_orbit {
                    return Err(e);
                }
                warn!("{e}; the construction still runs with l = 1");
                None
            }
            Err(e) => return Err(e),
        };
        let l = orbit.as_ref().map_or(1, |o| o.period);
        let lambda = l as f64 * stability(&cfg.map, 1)?.lambda;
        let alpha_l = l as f64 * cfg.alpha;
        let phi = match (cfg.phi, &orbit) {
            (PhiSpec::Value(v), _) => v,
            (PhiSpec::Bohr, Some(o)) => phi_for_theta(&space, o, 0.0, alpha_l),
            (PhiSpec::AntiBohr, Some(o)) => phi_for_theta(&space, o, PI, alpha_l),
            (_, None) => return Err(Error::Config("phi = bohr/antibohr needs a periodic point".into())),
        };
        let theta = orbit.as_ref().map(|o| bohr_phase(&space, o, phi, alpha_l));
        let big_t = cfg.big_t.unwrap_or_else(|| ScarParams::default_window(&space, lambda));
        Ok(RunSetup {
            space,
            x: cfg.point_f64(),
            orbit,
            l,
            lambda,
            phi,
            theta,
            big_t,
        })
    }

    /// `U^l` for the configured map.
    pub fn propagator_l(&self, map: &CatMap) -> Result<TorusOperator> {
        Ok(propagator(&self.space, map)?.pow(self.l))
    }

    fn header(&self, cfg: &RunConfig, grid: &WignerGrid) -> GridHeader {
        let mut params = cfg.header_params();
        params.push(("period".into(), self.l.to_string()));
        params.push(("phi".into(), format!("{:.16e}", self.phi)));
        if let Some(t) = self.theta {
            params.push(("theta".into(), format!("{t:.16e}")));
        }
        params.push(("T".into(), self.big_t.to_string()));
        GridHeader {
            n: cfg.n,
            map: cfg.map.to_string(),
            provenance: grid.provenance,
            params,
        }
    }

    fn entries(&self) -> Vec<(String, String)> {
        let mut e = vec![
            ("N".to_string(), self.space.dim().to_string()),
            ("point".to_string(), format!("{:.16e} {:.16e}", self.x[0], self.x[1])),
            ("period".to_string(), self.l.to_string()),
            ("lambda".to_string(), format!("{:.16e}", self.lambda)),
            ("phi".to_string(), format!("{:.16e}", self.phi)),
            ("T".to_string(), self.big_t.to_string()),
        ];
        if let Some(t) = self.theta {
            e.push(("theta".to_string(), format!("{t:.16e}")));
        }
        if let Some(o) = &self.orbit {
            e.push(("action".to_string(), o.action.to_string()));
        }
        e
    }
}

/// Exact scar Wigner grid.
pub fn scar_grid(cfg: &RunConfig, setup: &RunSetup) -> Result<WignerGrid> {
    let u = setup.propagator_l(&cfg.map)?;
    let mut params = ScarParams::new(setup.x, setup.phi, setup.big_t);
    params.window = cfg.window;
    let psi = scar_state(&setup.space, &u, &params)?;
    wigner_of_state(&setup.space, &psi)
}

fn sc_params(cfg: &RunConfig, setup: &RunSetup) -> Result<ScParams> {
    let orbit = setup.orbit.as_ref().ok_or_else(|| Error::Config("semiclassical run needs a periodic point".into()))?;
    let frame = ScHyperbolicFrame::new(&cfg.map, orbit, cfg.point, &setup.space, setup.phi, cfg.alpha)?;
    let mut p = ScParams::new(frame, setup.big_t, cfg.n);
    p.window = cfg.window;
    p.images = cfg.images;
    Ok(p)
}

/// Semiclassical grid; the point must be periodic.
pub fn semiclassical_grid(cfg: &RunConfig, setup: &RunSetup) -> Result<WignerGrid> {
    sc_grid(&sc_params(cfg, setup)?, &setup.space)
}

/// Spectral damping time, `T/2` unless configured.
pub fn spectral_tau(cfg: &RunConfig, setup: &RunSetup) -> f64 {
    cfg.tau.unwrap_or(setup.big_t as f64 / 2.0)
}

/// Spectral Wigner grid at the run's quasi-energy.
pub fn spectral_grid(cfg: &RunConfig, setup: &RunSetup) -> Result<WignerGrid> {
    let u = setup.propagator_l(&cfg.map)?;
    spectral_wigner(&setup.space, &u, setup.phi, spectral_tau(cfg, setup), cfg.tmax)
}

/// Pearson correlation over the comparison region for each Maslov phase
/// candidate, with the exact grid held fixed.
pub fn calibrate_alpha(cfg: &RunConfig, setup: &RunSetup, exact: &WignerGrid) -> Result<Vec<(f64, f64)>> {
    let region = Region::Square {
        center: setup.x,
        half_width: cfg.region_half_width,
    };
    let idx = region.indices(cfg.n);
    let va: Vec<f64> = idx.iter().map(|&(a, b)| exact.get(a, b)).collect();
    [0.0, 0.5 * PI, PI, 1.5 * PI]
        .iter()
        .map(|&alpha| {
            let mut c = cfg.clone();
            c.alpha = alpha;
            let g = semiclassical_grid(&c, setup)?;
            let vb: Vec<f64> = idx.iter().map(|&(a, b)| g.get(a, b)).collect();
            Ok((alpha, pearson(&va, &vb)))
        })
        .collect()
}

fn fmt_e(v: f64) -> String {
    format!("{v:.16e}")
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

fn emit_grid(cfg: &RunConfig, setup: &RunSetup, grid: &WignerGrid, stem: &str) -> Result<Vec<PathBuf>> {
    ensure_dir(&cfg.output)?;
    let mut files = Vec::new();
    let header = setup.header(cfg, grid);
    let x = setup.x;
    let keep = |pt: [f64; 2]| match cfg.scope {
        Scope::Full => true,
        Scope::Window(r) => Region::Square { center: x, half_width: r }.contains(pt),
    };
    for f in &cfg.emit {
        let (path, body) = match f {
            Format::Csv => (cfg.output.join(format!("{stem}.csv")), grid_csv(grid, &header, keep)),
            Format::Pgm => (cfg.output.join(format!("{stem}.pgm")), grid_pgm(grid)),
        };
        fs::write(&path, body)?;
        files.push(path);
    }
    Ok(files)
}

fn write_report(cfg: &RunConfig, name: &str, entries: &[(String, String)]) -> Result<PathBuf> {
    ensure_dir(&cfg.output)?;
    let path = cfg.output.join(name);
    fs::write(&path, report_text(entries))?;
    Ok(path)
}

/// Files written and the report text.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub report: String,
}

/// Periodic orbits up to the configured period, with windings, actions,
/// stability data and Cayley matrices.
pub fn cmd_classical(cfg: &RunConfig) -> Result<RunOutput> {
    let map = &cfg.map;
    let h = stability(map, 1)?;
    let mut entries = vec![
        ("map".to_string(), map.to_string()),
        ("trace".to_string(), map.trace().to_string()),
        ("lambda".to_string(), fmt_e(h.lambda)),
        ("xi_u".to_string(), format!("{} {}", fmt_e(h.xi_u[0]), fmt_e(h.xi_u[1]))),
        ("xi_s".to_string(), format!("{} {}", fmt_e(h.xi_s[0]), fmt_e(h.xi_s[1]))),
    ];
    let mut table = String::from("period,orbit,p,q,m1,m2,action\n");
    let mut orbit_id = 0;
    for l in 1..=cfg.period {
        let hl = stability(map, l)?;
        let c = hl.cayley.0;
        entries.push((format!("cayley_{l}"), format!("{} {} {} {}", c[0][0], c[0][1], c[1][0], c[1][1])));
        let (lhs, rhs) = det_identity_check(map, l)?;
        entries.push((format!("det_identity_{l}"), format!("{} {}", fmt_e(lhs), fmt_e(rhs))));
        let orbits: Vec<_> = periodic_points(map, l)?.into_iter().filter(|o| o.period == l).collect();
        entries.push((format!("orbits_{l}"), orbits.len().to_string()));
        for o in orbits {
            for (pt, m) in o.points.iter().zip(&o.windings) {
                table.push_str(&format!("{l},{orbit_id},{},{},{},{},{}\n", pt.p, pt.q, m[0], m[1], o.action));
            }
            orbit_id += 1;
        }
    }
    ensure_dir(&cfg.output)?;
    let csv = cfg.output.join("classical.csv");
    fs::write(&csv, &table)?;
    let rep = write_report(cfg, "classical_report.txt", &entries)?;
    Ok(RunOutput {
        files: vec![csv, rep],
        report: report_text(&entries) + &table,
    })
}

/// Exact scar state, its Wigner grid and a localization report.
pub fn cmd_scar(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let setup = RunSetup::new(cfg, false)?;
    let grid = scar_grid(cfg, &setup)?;
    let mut files = emit_grid(cfg, &setup, &grid, "scar")?;
    let loc = Localization::of(&grid, setup.x, cfg.radius)?;
    let mut entries = setup.entries();
    entries.push(("provenance".into(), grid.provenance.to_string()));
    entries.push(("sum_rule".into(), fmt_e(grid.base_sum())));
    entries.push(("sign_rule_residual".into(), fmt_e(grid.sign_rule_residual())));
    entries.push(("inside_rms".into(), fmt_e(loc.inside_rms)));
    entries.push(("outside_rms".into(), fmt_e(loc.outside_rms)));
    entries.push(("inside_over_outside".into(), fmt_e(1.0 / loc.outside_over_inside())));
    if setup.orbit.is_none() {
        entries.push(("warning".into(), "point is not periodic; scarring degrades".into()));
    }
    entries.push(("runtime_seconds".into(), format!("{:.3}", start.elapsed().as_secs_f64())));
    info!("scar grid done in {:.3} s", start.elapsed().as_secs_f64());
    files.push(write_report(cfg, "scar_report.txt", &entries)?);
    Ok(RunOutput {
        files,
        report: report_text(&entries),
    })
}

/// Semiclassical grid with the same file schema as [`cmd_scar`].
pub fn cmd_semiclassical(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let setup = RunSetup::new(cfg, true)?;
    let params = sc_params(cfg, &setup)?;
    let grid = sc_grid(&params, &setup.space)?;
    let mut files = emit_grid(cfg, &setup, &grid, "semiclassical")?;
    let loc = Localization::of(&grid, setup.x, cfg.radius)?;
    let mut entries = setup.entries();
    entries.push(("provenance".into(), grid.provenance.to_string()));
    entries.push(("images".into(), cfg.images.to_string()));
    let samples = [setup.x, [setup.x[0] + 0.25, setup.x[1]], [setup.x[0], setup.x[1] + 0.25]];
    entries.push(("image_tail".into(), fmt_e(image_tail(&params, &samples))));
    entries.push(("inside_rms".into(), fmt_e(loc.inside_rms)));
    entries.push(("outside_rms".into(), fmt_e(loc.outside_rms)));
    entries.push(("runtime_seconds".into(), format!("{:.3}", start.elapsed().as_secs_f64())));
    files.push(write_report(cfg, "semiclassical_report.txt", &entries)?);
    Ok(RunOutput {
        files,
        report: report_text(&entries),
    })
}

/// Spectral Wigner grid, with its localization compared to the scar grid.
pub fn cmd_spectral(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let setup = RunSetup::new(cfg, false)?;
    let grid = spectral_grid(cfg, &setup)?;
    let mut files = emit_grid(cfg, &setup, &grid, "spectral")?;
    let scar = scar_grid(cfg, &setup)?;
    let ls = Localization::of(&grid, setup.x, cfg.radius)?;
    let lc = Localization::of(&scar, setup.x, cfg.radius)?;
    let mut entries = setup.entries();
    entries.push(("tau".into(), fmt_e(spectral_tau(cfg, &setup))));
    entries.push(("spectral_outside_over_inside".into(), fmt_e(ls.outside_over_inside())));
    entries.push(("scar_outside_over_inside".into(), fmt_e(lc.outside_over_inside())));
    entries.push(("margin".into(), fmt_e(ls.outside_over_inside() / lc.outside_over_inside())));
    entries.push(("runtime_seconds".into(), format!("{:.3}", start.elapsed().as_secs_f64())));
    files.push(write_report(cfg, "spectral_report.txt", &entries)?);
    Ok(RunOutput {
        files,
        report: report_text(&entries),
    })
}

/// Compares two grids. With `grid_a` and `grid_b` set they are read from
/// disk; otherwise the exact and semiclassical grids are computed.
pub fn cmd_compare(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let x = cfg.point_f64();
    let mut extra = Vec::new();
    let (a, b) = match (&cfg.grid_a, &cfg.grid_b) {
        (Some(pa), Some(pb)) => {
            let (ha, a) = read_grid_csv(pa)?;
            let (hb, b) = read_grid_csv(pb)?;
            if ha.map != hb.map {
                return Err(Error::DimensionMismatch(format!("grids for maps {} and {}", ha.map, hb.map)));
            }
            (a, b)
        }
        (None, None) => {
            let setup = RunSetup::new(cfg, true)?;
            let a = scar_grid(cfg, &setup)?;
            let b = semiclassical_grid(cfg, &setup)?;
            for (alpha, r) in calibrate_alpha(cfg, &setup, &a)? {
                extra.push((format!("calibration_pearson_alpha_{alpha:.4}"), fmt_e(r)));
            }
            (a, b)
        }
        _ => return Err(Error::Config("set both grid_a and grid_b, or neither".into())),
    };
    let settings = CompareSettings {
        point: x,
        region: Region::Square {
            center: x,
            half_width: cfg.region_half_width,
        },
        loc_radius: cfg.radius,
        section_half_width: cfg.section_half_width,
    };
    let mut report = compare_grids(&a, &b, &settings)?;
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    ensure_dir(&cfg.output)?;
    let mut files = Vec::new();
    for axis in [Axis::Horizontal, Axis::Vertical] {
        let sa = Section::through(&a, x, axis, cfg.section_half_width);
        let sb = Section::through(&b, x, axis, cfg.section_half_width);
        let path = cfg.output.join(format!("section_{}.csv", axis.name()));
        fs::write(&path, section_csv(&sa.coords, &sa.values, &sb.values))?;
        files.push(path);
    }
    let text = report.to_text() + &report_text(&extra);
    let path = cfg.output.join("compare_report.txt");
    fs::write(&path, &text)?;
    files.push(path);
    Ok(RunOutput { files, report: text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str, dir: &Path) -> RunConfig {
        let mut c = RunConfig::from_text(text).unwrap();
        c.output = dir.to_path_buf();
        c
    }

    #[test]
    fn classical_lists_fixed_points() {
        let dir = tempfile::tempdir().unwrap();
        let out = cmd_classical(&cfg("period = 2", dir.path())).unwrap();
        assert!(out.report.contains("1,0,0,0,0,0,0\n"));
        assert!(out.report.contains("1,1,1/2,1/2,"));
        assert!(out.report.contains("orbits_2: 5"));
    }

    #[test]
    fn non_periodic_point() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg("N = 31\npoint = 0.123 0.456\nphi = 0.3\nT = 4", dir.path());
        assert!(cmd_scar(&c).is_ok());
        let e = cmd_semiclassical(&c).unwrap_err();
        assert!(matches!(e, Error::NotPeriodic { .. }));
        let c = cfg("N = 31\npoint = 0.123 0.456\nphi = bohr", dir.path());
        assert_eq!(cmd_scar(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn windowed_scope_writes_fewer_rows() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg("N = 31\nT = 4\nscope = window 0.1", dir.path());
        cmd_semiclassical(&c).unwrap();
        let text = fs::read_to_string(dir.path().join("semiclassical.csv")).unwrap();
        let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
        assert!(rows > 0 && rows < 62 * 62);
    }
}
