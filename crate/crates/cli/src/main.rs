//! `emfdose` command-line front end.
//!
//! Exit codes: 0 success or compliant, 1 usage or input error,
//! 2 evaluated and non-compliant.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "emfdose", version, about = "RF-EMF power density and skin SAR dosimetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Surface SAR for one transmitter at one distance
    Sar(SarArgs),
    /// Incident power density from a field magnitude or a link budget
    Pd(PdArgs),
    /// SAR against depth below the skin surface
    Profile(ProfileArgs),
    /// Cross-generation surface SAR and penetration depth table
    Compare(CompareArgs),
    /// Exposure map over a scenario grid
    Map(MapArgs),
    /// Check a scenario against its limit profile (exit 2 if non-compliant)
    Check(ScenarioArgs),
    /// Apply power control or beam steering to a scenario
    Mitigate(MitigateArgs),
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Tissue table name (default `dry-skin`; overrides a scenario's tissue)
    #[arg(long)]
    pub tissue: Option<String>,
    /// Additional tissue table file; its profile can then be named with --tissue
    #[arg(long, value_name = "PATH")]
    pub tissue_file: Option<PathBuf>,
    /// Limit-profile file; replaces a scenario's profile, and adds a compliance check to `sar`
    #[arg(long, value_name = "PATH")]
    pub limits: Option<PathBuf>,
    /// Write CSV here
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Write an SVG chart here
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Write the run manifest here (default: `<first output>.manifest.json`)
    #[arg(long, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
}

/// Transmitter description for single-source commands.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Equivalent isotropically radiated power, W
    #[arg(long, conflicts_with_all = ["power_w", "gain"])]
    pub eirp_w: Option<f64>,
    /// Transmit power, W (combined with --gain)
    #[arg(long)]
    pub power_w: Option<f64>,
    /// Linear antenna gain toward the exposed point
    #[arg(long, default_value_t = 1.0)]
    pub gain: f64,
    /// Carrier frequency, Hz
    #[arg(long)]
    pub freq_hz: f64,
    /// Transmitter-to-skin distance, m
    #[arg(long)]
    pub distance_m: f64,
    /// Fraction of time the transmitter radiates
    #[arg(long, default_value_t = 1.0)]
    pub duty_factor: f64,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct SarArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct PdArgs {
    /// RMS electric field magnitude, V/m (plane-wave route)
    #[arg(long, conflicts_with_all = ["eirp_w", "power_w", "distance_m"])]
    pub e_rms: Option<f64>,
    #[arg(long)]
    pub eirp_w: Option<f64>,
    #[arg(long)]
    pub power_w: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gain: f64,
    #[arg(long)]
    pub distance_m: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub duty_factor: f64,
    /// Carrier frequency, Hz (only used for the near-field advisory)
    #[arg(long)]
    pub freq_hz: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ProfileArgs {
    /// Incident power density, W/m² (instead of a transmitter)
    #[arg(long, conflicts_with_all = ["eirp_w", "power_w", "distance_m"])]
    pub pd_w_per_m2: Option<f64>,
    #[arg(long)]
    pub eirp_w: Option<f64>,
    #[arg(long)]
    pub power_w: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gain: f64,
    #[arg(long)]
    pub distance_m: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub duty_factor: f64,
    #[arg(long)]
    pub freq_hz: f64,
    /// Deepest row, mm (default: 10 penetration depths)
    #[arg(long)]
    pub max_depth_mm: Option<f64>,
    /// Row spacing, mm (default: 1/100 penetration depth)
    #[arg(long)]
    pub step_mm: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct CompareArgs {
    /// Generation list (default: the shipped calibration fixture)
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ScenarioArgs {
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct MapArgs {
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    PowerControl,
    SteerAway,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct MitigateArgs {
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,
    #[arg(long, value_enum)]
    pub strategy: Strategy,
    /// Protected point `x,y` in metres (default: the scenario's point)
    #[arg(long, value_name = "X,Y")]
    pub at: Option<String>,
    /// Source to steer (steer-away only)
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Output scenario file
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Result of a successful run.
pub enum Outcome {
    Done,
    Compliant,
    NonCompliant,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.command {
        Command::Sar(a) => commands::sar(a, args),
        Command::Pd(a) => commands::pd(a, args),
        Command::Profile(a) => commands::profile(a, args),
        Command::Compare(a) => commands::compare_cmd(a, args),
        Command::Map(a) => commands::map(a, args),
        Command::Check(a) => commands::check(a, args),
        Command::Mitigate(a) => commands::mitigate(a, args),
    };
    match result {
        Ok(Outcome::Done | Outcome::Compliant) => ExitCode::SUCCESS,
        Ok(Outcome::NonCompliant) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
