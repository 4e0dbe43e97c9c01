//! `polariton` — feasibility, conditional phase, collision grids, and
//! parameter scans for slow-light Rydberg polaritons.
//!
//! Exit codes: 0 success/feasible, 2 infeasible (or worked-example windows
//! missed), 1 usage or configuration errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polariton_cli::config::{parse_config, RawConfig};
use polariton_cli::run;
use polariton_cli::scan::ScanAxis;

#[derive(Parser)]
#[command(
    name = "polariton",
    version,
    about = "Slow-light Rydberg polariton collision simulator",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score the five slow-light validity inequalities for a configuration
    Validate {
        /// Flat key=value configuration file (defaults to the built-in
        /// worked example)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the report as JSON to this path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Factor required of the soft (>>/<<) inequalities
        #[arg(long, default_value_t = 10.0)]
        margin_factor: f64,
    },
    /// Conditional phase: closed form vs quadrature, bound, and fidelity
    Phase {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the summary as JSON to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve the two-pulse wavefunction and write grid + diagnostics
    Collide {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for grid.csv, grid_header.json, metrics.json,
        /// potential_curve.csv, phase_curve.csv
        #[arg(long)]
        out: PathBuf,
        /// Grid points per axis
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
    /// Sweep one configuration field and tabulate derived quantities
    Scan {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Axis specification `FIELD:MIN:MAX:STEPS[:log]`
        #[arg(long)]
        scan: String,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format
        #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
        format: String,
        #[arg(long, default_value_t = 10.0)]
        margin_factor: f64,
    },
    /// Run the built-in worked example and check its expected windows
    PaperRepro {
        /// Optional configuration override
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the summary as JSON to this path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 10.0)]
        margin_factor: f64,
    },
}

fn load_config(path: Option<&PathBuf>) -> Result<RawConfig, String> {
    match path {
        None => Ok(RawConfig::paper()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            parse_config(&text).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output; keep exit 0 for
            // those and map usage errors to 1 per the exit-code contract
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let mut stdout = std::io::stdout().lock();
    let outcome = match &cli.command {
        Command::Validate {
            config,
            out,
            margin_factor,
        } => load_config(config.as_ref()).and_then(|raw| {
            run::run_validate(&raw, *margin_factor, out.as_deref(), &mut stdout)
                .map_err(|e| e.to_string())
        }),
        Command::Phase { config, out } => load_config(config.as_ref()).and_then(|raw| {
            run::run_phase(&raw, out.as_deref(), &mut stdout).map_err(|e| e.to_string())
        }),
        Command::Collide { config, out, grid } => load_config(config.as_ref()).and_then(|raw| {
            run::run_collide(&raw, *grid, out, &mut stdout).map_err(|e| e.to_string())
        }),
        Command::Scan {
            config,
            scan,
            out,
            format,
            margin_factor,
        } => load_config(config.as_ref()).and_then(|raw| {
            let axis = ScanAxis::parse(scan).map_err(|e| e.to_string())?;
            run::run_scan(
                &raw,
                &axis,
                *margin_factor,
                format == "json",
                out.as_deref(),
                &mut stdout,
            )
            .map_err(|e| e.to_string())
        }),
        Command::PaperRepro {
            config,
            out,
            grid,
            margin_factor,
        } => load_config(config.as_ref()).and_then(|raw| {
            run::run_paper_repro(&raw, *margin_factor, *grid, out.as_deref(), &mut stdout)
                .map_err(|e| e.to_string())
        }),
    };

    match outcome {
        Ok(code) => {
            let _ = stdout.flush();
            ExitCode::from(code as u8)
        }
        Err(message) => {
            let _ = stdout.flush();
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
