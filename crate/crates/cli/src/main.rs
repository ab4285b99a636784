use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hardy_cli::commands;

fn parse_transmissivity(s: &str) -> Result<f64, String> {
    if s == "1/sqrt2" {
        return Ok(std::f64::consts::FRAC_1_SQRT_2);
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

fn parse_theta(s: &str) -> Result<f64, String> {
    if s == "pi/4" {
        return Ok(std::f64::consts::FRAC_PI_4);
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Annihilation-interferometer simulator and Hardy-type nonlocality verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the final-state amplitudes of an experiment
    Evolve {
        /// Canonical alias (eq1..eq4) or path to an experiment file
        source: String,
        /// Emit JSON-lines instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Print the Born outcome distribution of an experiment
    Distribution {
        /// Canonical alias (eq1..eq4) or path to an experiment file
        source: String,
        /// Emit JSON-lines instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Run the four experiments and report the local-realism verdict
    Verify {
        /// BS2 transmissivity: a decimal in [0, 1] or the literal 1/sqrt2
        #[arg(long, value_parser = parse_transmissivity, default_value = "1/sqrt2")]
        t: f64,
        /// Emit JSON-lines instead of the report
        #[arg(long)]
        json: bool,
    },
    /// Enumerate deterministic local strategies under chosen exclusions
    Lhv {
        /// Comma-separated subset of eq5,eq6,eq7, or `all` / `none`
        #[arg(long, default_value = "all")]
        constraints: String,
        /// Emit JSON-lines instead of the listing
        #[arg(long)]
        json: bool,
    },
    /// Tabulate P(d+,d-) of the both-in experiment over transmissivity
    Sweep {
        /// Lower end of the transmissivity range (decimal or 1/sqrt2)
        #[arg(value_parser = parse_transmissivity)]
        t_min: f64,
        /// Upper end of the transmissivity range
        #[arg(value_parser = parse_transmissivity)]
        t_max: f64,
        /// Number of grid points (at least 2)
        steps: usize,
        /// Write the table to this path instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit JSON-lines instead of CSV
        #[arg(long)]
        json: bool,
    },
    /// Search the two-qubit Hardy ceiling for comparison
    Bound {
        /// Per-axis sampling density (minimum 8)
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Outer refinement rounds (minimum 1)
        #[arg(long, default_value_t = 3)]
        rounds: usize,
        /// Lock the Schmidt angle (radians, or the literal pi/4)
        #[arg(long, value_parser = parse_theta)]
        theta: Option<f64>,
        /// Emit a JSON line instead of the report
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve { source, json } => commands::evolve(&source, json),
        Command::Distribution { source, json } => commands::distribution(&source, json),
        Command::Verify { t, json } => commands::verify_cmd(t, json),
        Command::Lhv { constraints, json } => commands::lhv(&constraints, json),
        Command::Sweep {
            t_min,
            t_max,
            steps,
            out,
            json,
        } => commands::sweep(t_min, t_max, steps, out.as_deref(), json),
        Command::Bound {
            grid,
            rounds,
            theta,
            json,
        } => commands::bound(grid, rounds, theta, json),
    };
    match result {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit_code as u8)
        }
    }
}
