use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcsusy::cli::{self, Format, Grid, Outcome, RunConfig};
use mcsusy::jc::Example;
use mcsusy::Result;

#[derive(Parser)]
#[command(name = "mcsusy", version, about = "Exact Moyal-Clifford SUSY verification and Jaynes-Cummings spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every identity for the configured system (JSON report).
    Verify(Common),
    /// Eigenvalue table of an example system with K = 0.
    Spectrum(Common),
    /// Sample a Wigner function on a (q1, p1) grid.
    Wigner(Common),
    /// Human-readable PASS/FAIL listing.
    Report(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    example: Option<i64>,
    #[arg(long = "k", allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    state: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    /// Config file first, then flags on top.
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => cli::parse_config(&std::fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        if let Some(n) = self.example {
            cfg.set_example(Example::from_number(n)?);
        }
        if let Some(k) = &self.k {
            cfg.set_k(k)?;
        }
        if let Some(n) = self.nmax {
            cfg.nmax = Some(n);
        }
        if let Some(s) = &self.state {
            cfg.state = Some(cli::parse_state(s)?);
        }
        if let Some(g) = &self.grid {
            cfg.grid = Some(Grid::parse(g)?);
        }
        if let Some(f) = &self.format {
            cfg.format = Some(
                Format::parse(f)
                    .ok_or_else(|| mcsusy::Error::InvalidArgument(format!("format must be csv or json, got '{f}'")))?,
            );
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.to_string_lossy().into_owned());
        }
        Ok(cfg)
    }
}

fn run(command: Command) -> Result<Outcome> {
    let (common, run): (Common, fn(&RunConfig) -> Result<Outcome>) = match command {
        Command::Verify(c) => (c, cli::cmd_verify),
        Command::Spectrum(c) => (c, cli::cmd_spectrum),
        Command::Wigner(c) => (c, cli::cmd_wigner),
        Command::Report(c) => (c, |cfg| cli::cmd_report(cfg, std::env::var("MC_COLOR").map_or(true, |v| v != "0"))),
    };
    let cfg = common.resolve()?;
    let outcome = run(&cfg)?;
    match &cfg.out {
        Some(path) => cli::write_atomic(Path::new(path), &outcome.output)?,
        None => print!("{}", outcome.output),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
