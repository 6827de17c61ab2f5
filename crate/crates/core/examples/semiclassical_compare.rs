//! Exact against semiclassical scar Wigner function at N = 223, for the
//! Bohr-quantized and the opposite phase, with the Maslov phase scan.

use scarlab::compare::{compare_grids, CompareSettings};
use scarlab::config::{PhiSpec, RunConfig};
use scarlab::pipeline::{calibrate_alpha, scar_grid, semiclassical_grid, RunSetup};

fn main() -> scarlab::Result<()> {
    for (name, phi) in [("theta = 0", PhiSpec::Bohr), ("theta = pi", PhiSpec::AntiBohr)] {
        let mut cfg = RunConfig::default();
        cfg.big_t = Some(6);
        cfg.phi = phi;
        let setup = RunSetup::new(&cfg, true)?;
        let exact = scar_grid(&cfg, &setup)?;
        let sc = semiclassical_grid(&cfg, &setup)?;
        let report = compare_grids(&exact, &sc, &CompareSettings::around(setup.x))?;
        println!("{name}\n{}", report.to_text());
        for (alpha, r) in calibrate_alpha(&cfg, &setup, &exact)? {
            println!("  alpha = {alpha:.4}: pearson {r:.4}");
        }
    }
    Ok(())
}
