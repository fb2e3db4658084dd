//! Command-line harness for the open-system toolkit: one scenario per
//! invocation, CSV/JSON reports with deterministic bytes, exit codes
//! 0 (success), 2 (invalid config), 3 (numeric failure), 4 (io failure).

mod config;
mod output;
mod run;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(oqsim_core::Error),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid config: {msg}"),
            CliError::Numeric(e) => write!(f, "numeric failure: {e}"),
            CliError::Io(msg) => write!(f, "io failure: {msg}"),
        }
    }
}

impl From<oqsim_core::Error> for CliError {
    fn from(e: oqsim_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

#[derive(Parser)]
#[command(
    name = "oqsim",
    version,
    about = "Open-system simulator: noise channels, entanglement decay, protection schemes",
    after_help = "Config field documentation and defaults: `oqsim schema`."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement and coherence measures along a channel parameter sweep
    ChannelSweep(RunArgs),
    /// Scan a measure along a channel family and locate its first zero
    Esd(RunArgs),
    /// Steady-state concurrence over an occupation grid
    Thermal(RunArgs),
    /// Off-diagonal decay under repeated environment collisions
    Collision(RunArgs),
    /// Separation-dependent scattering decoherence rate (and optional
    /// positional evolution)
    Spatial(RunArgs),
    /// Negativity of the exchange model across detuning and time
    EmSweep(RunArgs),
    /// Compare protection schemes against correlated damping
    Protect(RunArgs),
    /// Print the config schema with defaults for every subcommand
    Schema,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario config file (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Write the result table to this CSV file (atomic)
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Write the full report to this JSON file (atomic)
    #[arg(long)]
    out_json: Option<PathBuf>,
    /// Suppress the stderr status lines and the stdout report fallback
    #[arg(long)]
    quiet: bool,
    /// Record wall-clock seconds in the JSON report (breaks byte-for-byte
    /// reproducibility between runs)
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Schema => {
            let doc = serde_json::to_string_pretty(&config::schema_document())
                .expect("schema document serializes");
            println!("{doc}");
            Ok(())
        }
        Command::ChannelSweep(args) => execute("channel-sweep", &args),
        Command::Esd(args) => execute("esd", &args),
        Command::Thermal(args) => execute("thermal", &args),
        Command::Collision(args) => execute("collision", &args),
        Command::Spatial(args) => execute("spatial", &args),
        Command::EmSweep(args) => execute("em-sweep", &args),
        Command::Protect(args) => execute("protect", &args),
    }
}

fn execute(kind: &'static str, args: &RunArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", args.config.display())))?;
    let scenario = config::load_scenario(kind, &text)?;
    let mut report = run::run(&scenario)?;
    if args.timing {
        report.wall_time_s = Some(started.elapsed().as_secs_f64());
    }

    let mut wrote = false;
    if let Some(path) = &args.out_csv {
        output::write_atomic(path, &output::to_csv(&report)?)?;
        if !args.quiet {
            eprintln!("wrote {}", path.display());
        }
        wrote = true;
    }
    if let Some(path) = &args.out_json {
        output::write_atomic(path, &output::to_json_pretty(&report))?;
        if !args.quiet {
            eprintln!("wrote {}", path.display());
        }
        wrote = true;
    }
    if !wrote && !args.quiet {
        println!("{}", output::to_json_compact(&report));
    }
    Ok(())
}
