//! Exact scar state at the fixed point (1/2, 1/2) and its Wigner function,
//! written as CSV and PGM.
//!
//! cargo run --release --example scar_wigner -- [N] [out_dir]

use scarlab::config::{Format, PhiSpec, RunConfig};
use scarlab::pipeline::cmd_scar;

fn main() -> scarlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = RunConfig::default();
    cfg.n = args.next().map_or(Ok(223), |a| a.parse()).map_err(|_| scarlab::Error::Config("N".into()))?;
    cfg.output = args.next().unwrap_or_else(|| "out/scar".into()).into();
    cfg.phi = PhiSpec::Bohr;
    cfg.emit = vec![Format::Csv, Format::Pgm];
    let out = cmd_scar(&cfg)?;
    print!("{}", out.report);
    for f in out.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
