//! Spectral Wigner function against the scar Wigner function: RMS outside
//! the discs around the pattern centers relative to the RMS inside.

use scarlab::compare::Localization;
use scarlab::config::{PhiSpec, RunConfig};
use scarlab::pipeline::{scar_grid, spectral_grid, RunSetup};

fn main() -> scarlab::Result<()> {
    let mut cfg = RunConfig::default();
    cfg.big_t = Some(6);
    cfg.alpha = 0.0;
    cfg.phi = PhiSpec::AntiBohr;
    let setup = RunSetup::new(&cfg, true)?;
    let scar = scar_grid(&cfg, &setup)?;
    for tau in [0.5, 1.5, 3.0, 6.0] {
        cfg.tau = Some(tau);
        let spec = spectral_grid(&cfg, &setup)?;
        let ls = Localization::of(&spec, setup.x, 0.15)?;
        println!("tau = {tau}: spectral outside/inside {:.4}", ls.outside_over_inside());
    }
    let lc = Localization::of(&scar, setup.x, 0.15)?;
    println!("scar outside/inside {:.4}", lc.outside_over_inside());
    Ok(())
}
