use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_spin, parse_spins, FileConfig, Format, RunConfig, Sweep, SweepParam};
use crate::error::{CliError, CliResult};
use dspec_core::spectrum::Spin;

#[derive(Debug, Parser)]
#[command(
    name = "dspec",
    version,
    about = "Hard-wall spectrum of a spin-1/2 particle in a rotating frame of the cosmic dislocation spacetime"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and asymptotic level table.
    Spectrum(TableArgs),
    /// Level tables over a range of one parameter, in long format.
    Sweep(SweepArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
    /// Sampled, normalized radial mode.
    Wavefunction(WaveArgs),
    /// Metric components and structure-equation residual at one radius.
    Geometry(GeometryArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Flat JSON file with default values for any of the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<f64>,
    #[arg(long = "k-axial", allow_hyphen_values = true)]
    pub k_axial: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l_max: Option<i64>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// +1, -1 or both.
    #[arg(long, allow_hyphen_values = true)]
    pub spin: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub table: TableArgs,
    #[arg(long, value_enum)]
    pub param: Option<SweepParam>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Full resolution, including the n = 0..50 asymptotic sweep.
    #[arg(long)]
    pub full: bool,
    /// Flip the sign of the R'/rho term; the suite must then fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub l: i64,
    #[arg(long, default_value = "+1", allow_hyphen_values = true, value_parser = parse_spin)]
    pub spin: Spin,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GeometryArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub rho: f64,
}

fn load(physics: &PhysicsArgs) -> CliResult<FileConfig> {
    match &physics.config {
        Some(path) => FileConfig::load(path),
        None => Ok(FileConfig::default()),
    }
}

/// Merges flags over the config file over the defaults.
pub fn resolve(
    physics: &PhysicsArgs,
    levels: Option<&LevelArgs>,
    output: Option<&OutputArgs>,
    sweep: Option<&SweepArgs>,
) -> CliResult<RunConfig> {
    let file = load(physics)?;
    let d = RunConfig::default();
    let mut c = RunConfig {
        mass: physics.mass.or(file.mass).unwrap_or(d.mass),
        omega: physics.omega.or(file.omega).unwrap_or(d.omega),
        zeta: physics.zeta.or(file.zeta).unwrap_or(d.zeta),
        k_axial: physics.k_axial.or(file.k_axial).unwrap_or(d.k_axial),
        l_min: levels
            .and_then(|l| l.l_min)
            .or(file.l_min)
            .unwrap_or(d.l_min),
        l_max: levels
            .and_then(|l| l.l_max)
            .or(file.l_max)
            .unwrap_or(d.l_max),
        n_max: levels
            .and_then(|l| l.n_max)
            .or(file.n_max)
            .unwrap_or(d.n_max),
        spins: d.spins.clone(),
        sweep: None,
        format: output
            .and_then(|o| o.format)
            .or(file.format)
            .unwrap_or(d.format),
        out: output.and_then(|o| o.out.clone()).or(file.out.clone()),
    };
    if let Some(spin) = levels.and_then(|l| l.spin.clone()).or(file.spin()) {
        c.spins = parse_spins(&spin).map_err(CliError::Config)?;
    }
    if let Some(s) = sweep {
        let missing = |what: &str| CliError::Config(format!("sweep needs --{what}"));
        c.sweep = Some(Sweep {
            param: s
                .param
                .or(file.sweep_param)
                .ok_or_else(|| missing("param"))?,
            from: s.from.or(file.sweep_from).ok_or_else(|| missing("from"))?,
            to: s.to.or(file.sweep_to).ok_or_else(|| missing("to"))?,
            steps: s
                .steps
                .or(file.sweep_steps)
                .ok_or_else(|| missing("steps"))?,
        });
    }
    c.validate()?;
    Ok(c)
}
