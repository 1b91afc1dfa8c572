//! `seisplan` — capacity planning and protocol simulation for duty-cycled
//! LPWA seismic telemetry networks.
//!
//! Exit codes: 0 success, 1 infeasible design, 2 configuration error,
//! 3 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seisplan_core::commands::{cmd_design, cmd_plan, cmd_rates, cmd_simulate, CommandError};
use seisplan_core::config::ProjectConfig;
use seisplan_core::report::Report;
use seisplan_core::simulator::TraceRow;

#[derive(Parser)]
#[command(name = "seisplan", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-stream bit-rates and yearly data volumes for the scenario
    Rates(RunArgs),
    /// Search the design grid for feasible bit-rate/delay trade-offs
    Design(RunArgs),
    /// Plan the node/gateway topology and cost out each option
    Plan(RunArgs),
    /// Simulate the duty-cycled protocol and check it against the
    /// analytical delay
    Simulate(RunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    /// Path to a JSON project configuration
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Bundled preset name (currently: groningen)
    #[arg(long)]
    preset: Option<String>,
    /// Override the simulation RNG seed
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_config(args: &RunArgs) -> Result<ProjectConfig, CommandError> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => ProjectConfig::from_json_file(path)?,
        (None, Some(name)) => {
            ProjectConfig::preset(name).ok_or_else(|| {
                CommandError::Validation(seisplan_core::config::ConfigError {
                    path: "--preset".to_string(),
                    message: format!("unknown preset '{name}'"),
                })
            })?
        }
        _ => {
            return Err(CommandError::Validation(
                seisplan_core::config::ConfigError {
                    path: "--config/--preset".to_string(),
                    message: "exactly one of --config or --preset is required".to_string(),
                },
            ))
        }
    };
    if let Some(seed) = args.seed {
        cfg.sim.rng_seed = seed;
    }
    Ok(cfg)
}

fn emit(report: &Report, args: &RunArgs) -> Result<(), CommandError> {
    let rendered = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()).map_err(|e| {
            CommandError::Internal(format!("cannot write {}: {e}", path.display()))
        })?,
        None => println!("{rendered}"),
    }
    Ok(())
}

fn write_trace(report: &Report, cfg: &ProjectConfig) -> Result<(), CommandError> {
    let (Some(sim), Some(path)) = (&report.simulation, &cfg.sim.trace_path) else {
        return Ok(());
    };
    if sim.report.trace.is_empty() {
        return Ok(());
    }
    let mut csv = String::from(TraceRow::CSV_HEADER);
    csv.push('\n');
    for row in &sim.report.trace {
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }
    std::fs::write(path, csv.as_bytes())
        .map_err(|e| CommandError::Internal(format!("cannot write trace {path}: {e}")))
}

fn execute(command: &Command) -> Result<ExitCode, CommandError> {
    let args = match command {
        Command::Rates(a) | Command::Design(a) | Command::Plan(a) | Command::Simulate(a) => a,
    };
    let cfg = load_config(args)?;
    let report = match command {
        Command::Rates(_) => cmd_rates(&cfg)?,
        Command::Design(_) => cmd_design(&cfg)?,
        Command::Plan(_) => cmd_plan(&cfg)?,
        Command::Simulate(_) => {
            let report = cmd_simulate(&cfg)?;
            write_trace(&report, &cfg)?;
            report
        }
    };
    emit(&report, args)?;
    let infeasible = matches!(&report.design, Some(d) if d.chosen.is_none());
    Ok(if infeasible {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
