use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scarlab::config::RunConfig;
use scarlab::pipeline::{cmd_classical, cmd_compare, cmd_scar, cmd_semiclassical, cmd_spectral, RunOutput};
use scarlab::Result;

#[derive(Parser)]
#[command(name = "scarlab", version, about = "Scar functions of quantized cat maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// KEY=VALUE overrides applied after the file.
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Periodic orbits, windings, actions and stability data.
    Classical(RunArgs),
    /// Exact scar state and its Wigner grid.
    Scar(RunArgs),
    /// Semiclassical scar Wigner grid.
    Semiclassical(RunArgs),
    /// Spectral Wigner grid with a localization comparison.
    Spectral(RunArgs),
    /// Compare two grids, or the exact and semiclassical grids.
    Compare(RunArgs),
}

fn run(cmd: Cmd) -> Result<RunOutput> {
    let (args, f): (RunArgs, fn(&RunConfig) -> Result<RunOutput>) = match cmd {
        Cmd::Classical(a) => (a, cmd_classical),
        Cmd::Scar(a) => (a, cmd_scar),
        Cmd::Semiclassical(a) => (a, cmd_semiclassical),
        Cmd::Spectral(a) => (a, cmd_spectral),
        Cmd::Compare(a) => (a, cmd_compare),
    };
    let cfg = RunConfig::load(args.config.as_deref(), &args.overrides)?;
    f(&cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            print!("{}", out.report);
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("scarlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
