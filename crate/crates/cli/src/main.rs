use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use qhm_cli::config::{load_config_file, parse_complex, Command, Format, Overrides, RunConfig};
use qhm_core::Complex64;

/// Complex quantum Hamilton mechanics for the harmonic-oscillator family.
#[derive(Parser)]
#[command(name = "qhm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Integrate eigen-trajectories and write t, x, p, E per sample
    Trajectory(Flags),
    /// Check linear-mapping invariance of a family member against the base oscillator
    Verify(Flags),
    /// Integrate the n=0 → n=1 transition and its complex energy history
    Transition(Flags),
    /// Action and period contour integrals of one closed orbit, numeric and by residues
    Contour(Flags),
}

#[derive(Args, Debug)]
struct Flags {
    /// key = value configuration file, one [section] per command; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog member H1..H6
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    member: Option<String>,
    /// Explicit stretch/rotation factor a as re,im
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    a: Option<Complex64>,
    /// Explicit shift b as re,im
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    b: Option<Complex64>,
    /// Explicit energy offset c as re,im
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    c: Option<Complex64>,
    /// Quantum number
    #[arg(long)]
    n: Option<usize>,
    /// Initial position re,im (repeatable; verify reads it in base coordinates)
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    x0: Vec<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    t_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
    /// Integrator absolute and relative tolerance, in [1e-14, 1e-2]
    #[arg(long)]
    tolerance: Option<f64>,
    /// Output file; relative paths resolve against $QHM_OUTPUT_DIR when set
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_parser = format_arg)]
    format: Option<Format>,
    /// Seed for the verification sweep
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sweep_points: Option<usize>,
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn format_arg(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: anyhow::Error| e.to_string())
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            member: self.member.clone(),
            a: self.a,
            b: self.b,
            c: self.c,
            n: self.n,
            x0: self.x0.clone(),
            t_start: self.t_start,
            t_end: self.t_end,
            tolerance: self.tolerance,
            output: self.output.clone(),
            format: self.format,
            seed: self.seed,
            sweep_points: self.sweep_points,
        }
    }
}

fn resolve(command: Command, flags: &Flags) -> Result<RunConfig> {
    let file = match &flags.config {
        Some(path) => load_config_file(path, command)?,
        None => Overrides::default(),
    };
    RunConfig::resolve(command, flags.overrides().over(file))
}

fn execute(config: &RunConfig) -> Result<bool> {
    let outcome = qhm_cli::run(config)?;
    match &config.output_path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(path, &outcome.body).with_context(|| format!("writing {}", path.display()))?;
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            eprintln!("wrote {}", path.display());
        }
        None => {
            print!("{}", outcome.body);
            for line in &outcome.summary {
                eprintln!("{line}");
            }
        }
    }
    Ok(outcome.passed)
}

/// Exit statuses: 0 success, 1 failed check or computation error, 2 invalid usage.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match &cli.command {
        Sub::Trajectory(f) => (Command::Trajectory, f),
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Transition(f) => (Command::Transition, f),
        Sub::Contour(f) => (Command::Contour, f),
    };
    let config = match resolve(command, flags) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
