//! `ktorus`: exact checks and invariants for Rieffel projections over tori.
//!
//! Exit status 0 when every check passes, 1 when a verification fails, 2 on bad input.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "ktorus", version, about = "Rieffel projections over tori: exact checks and K-theory invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact identities for P_I, its Rieffel pair and U_I.
    VerifyIsely,
    /// Rieffel equations and projection identities for a pair read from JSON.
    VerifyRieffel { input: PathBuf },
    /// The scalar conditions on (a, b, alpha, beta, gamma) read from JSON.
    PropMain1 { input: PathBuf },
    /// Lattice Chern number of a projection field on T^2.
    Chern {
        /// `isely`, `isely-complement`, `loring`, `const-e11`, or a JSON file `{"p": [[..], [..]]}`.
        field: String,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Boundary class of scalar data over the circle.
    Boundary {
        /// `isely`, `loring`, `trivial`, `constant-trivial`, or a JSON datum in one variable.
        data: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Winding number of an expression in `s1`, `r1` around the circle.
    Winding {
        expr: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generator report for T^3.
    K3 {
        /// Per-face grid size.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Grid for the direct degree-3 integral of U_I; 0 skips it.
        #[arg(long, default_value_t = 24)]
        odd_grid: usize,
        /// Grid for the `--csv` dump of U_I.
        #[arg(long, default_value_t = 32)]
        field_grid: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// P_I(U, V) for commuting unitary matrices read from JSON `{"u": .., "v": ..}`.
    Funcalc { input: PathBuf },
    /// Partial sums of the Fourier series of |sin(pi theta)| and norm diagnostics.
    Fourier {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Number of powers in the spectral-radius sequences.
        #[arg(long = "K", default_value_t = 12)]
        k: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sup-norm and C^1-norm gaps between S_2N and S_N.
    C1gap {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyIsely => "verify-isely",
            Command::VerifyRieffel { .. } => "verify-rieffel",
            Command::PropMain1 { .. } => "prop-main1",
            Command::Chern { .. } => "chern",
            Command::Boundary { .. } => "boundary",
            Command::Winding { .. } => "winding",
            Command::K3 { .. } => "k3",
            Command::Funcalc { .. } => "funcalc",
            Command::Fourier { .. } => "fourier",
            Command::C1gap { .. } => "c1gap",
        }
    }

    fn run(&self) -> input::InputResult<commands::Outcome> {
        match self {
            Command::VerifyIsely => commands::verify_isely(),
            Command::VerifyRieffel { input } => commands::verify_rieffel(input),
            Command::PropMain1 { input } => commands::prop_main1(input),
            Command::Chern { field, grid, csv } => commands::chern(field, *grid, csv),
            Command::Boundary { data, grid, csv } => commands::boundary(data, *grid, csv),
            Command::Winding { expr, grid, csv } => commands::winding(expr, *grid, csv),
            Command::K3 { grid, odd_grid, field_grid, csv } => {
                commands::k3(*grid, *odd_grid, *field_grid, csv)
            }
            Command::Funcalc { input } => commands::funcalc(input),
            Command::Fourier { n, alpha, k, csv } => commands::fourier(*n, *alpha, *k, csv),
            Command::C1gap { n, grid, csv } => commands::c1gap(*n, *grid, csv),
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("KTORUS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("KTORUS_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let name = cli.command.name();
    match cli.command.run() {
        Ok(out) => {
            let mut body = Map::new();
            body.insert("schema".into(), json!(SCHEMA));
            body.insert("command".into(), json!(name));
            body.insert("passed".into(), json!(out.passed));
            if let Value::Object(fields) = out.report {
                body.extend(fields);
            }
            println!("{}", serde_json::to_string_pretty(&Value::Object(body)).unwrap());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(input::InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
