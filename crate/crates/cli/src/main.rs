//! `sympert`: batch front end for the boundary-triplet toolkit.
//!
//! Every command except `sweep` prints one JSON object
//! `{command, inputs, output, provenance}` on stdout; `sweep` prints CSV.
//! Exit codes: 0 success, 2 invalid input, 3 mathematical failure, 64 unknown
//! subcommand.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use args::{parse_complex, parse_pair, ModelArgs};
use commands::{Finished, SweepArgs, SweepMode};
use sympert::weyl::RootScan;
use sympert::C64;

const EXIT_INPUT: u8 = 2;
const EXIT_MATH: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "sympert", version, about = "Boundary-triplet computations for singular perturbations with symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Model catalogue
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Solve the homogeneity system for the admissible matrix R
    SolveR {
        #[command(flatten)]
        model: ModelArgs,
        /// Relative tolerance of the consistency checks
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Rank-one trichotomy of homogeneous extensions
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        /// Relative tolerance of the consistency checks
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Evaluate the Weyl function M(z)
    Weyl {
        #[command(flatten)]
        model: ModelArgs,
        /// Spectral parameter as re,im
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
        /// Admissible matrix (JSON or file); defaults to the model's unique solution
        #[arg(long = "R")]
        r: Option<String>,
        /// Tolerance used when solving for R
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Negative eigenvalues of the realization A_B
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Coupling matrix B (JSON or file)
        #[arg(long = "B")]
        b: String,
        /// Search interval lo,hi with lo < hi < 0
        #[arg(long, value_parser = parse_pair::<f64>, allow_hyphen_values = true)]
        interval: (f64, f64),
        /// Log-spaced scan points
        #[arg(long, default_value_t = 4000)]
        points: usize,
        /// Absolute bisection tolerance on x
        #[arg(long, default_value_t = 1e-12)]
        root_tol: f64,
        /// Admissible matrix (JSON or file); defaults to the model's unique solution
        #[arg(long = "R")]
        r: Option<String>,
        /// Tolerance used when solving for R
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Nonnegativity criterion for A_B
    Nonneg {
        #[command(flatten)]
        model: ModelArgs,
        /// Coupling matrix B (JSON or file)
        #[arg(long = "B")]
        b: String,
        /// Admissible matrix (JSON or file); defaults to the model's unique solution
        #[arg(long = "R")]
        r: Option<String>,
        /// Tolerance of the determinant and Loewner-order checks
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Scattering matrix S(z) = (I - 2izB)(I + 2izB)^-1
    Smatrix {
        /// Coupling matrix B (JSON or file)
        #[arg(long = "B")]
        b: String,
        /// Spectral parameter as re,im
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// Spectrum ladder lambda·p^n
    Ladder {
        /// Base point as re,im or a real number
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: C64,
        /// Ladder ratio p(t0)
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        /// Inclusive exponent range a,b
        #[arg(long, value_parser = parse_pair::<i32>, allow_hyphen_values = true)]
        range: (i32, i32),
    },
    /// Parameter sweep written as CSV
    Sweep {
        #[arg(value_enum)]
        mode: SweepMode,
        #[command(flatten)]
        model: ModelArgs,
        /// Coupling matrix B for the smatrix sweep (JSON or file)
        #[arg(long = "B")]
        b: Option<String>,
        /// Admissible matrix (JSON or file); defaults to the model's unique solution
        #[arg(long = "R")]
        r: Option<String>,
        /// First grid value (b for nonneg, Re z otherwise)
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        /// Last grid value
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        /// Number of grid points
        #[arg(long)]
        steps: usize,
        /// Fixed Im z for the weyl and smatrix sweeps
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        im: f64,
        /// Tolerance for the nonnegativity checks and for solving R
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the reproduction suite
    Verify,
}

#[derive(Subcommand)]
enum ModelAction {
    /// List model kinds
    List,
    /// Family, flags and Gram samples of a model
    Info {
        #[command(flatten)]
        model: ModelArgs,
    },
}

fn run(cli: Cli) -> sympert::Result<Option<Finished>> {
    Ok(Some(match cli.command {
        Command::Model { action: ModelAction::List } => commands::model_list(),
        Command::Model {
            action: ModelAction::Info { model },
        } => commands::model_info(&model)?,
        Command::SolveR { model, tol } => commands::solve_r(&model, tol)?,
        Command::Classify { model, tol } => commands::classify(&model, tol)?,
        Command::Weyl { model, z, r, tol } => commands::weyl(&model, z, r.as_deref(), tol)?,
        Command::Spectrum {
            model,
            b,
            interval,
            points,
            root_tol,
            r,
            tol,
        } => commands::spectrum(&model, &b, interval, RootScan { points, tol: root_tol }, r.as_deref(), tol)?,
        Command::Nonneg { model, b, r, tol } => commands::nonneg(&model, &b, r.as_deref(), tol)?,
        Command::Smatrix { b, z } => commands::smatrix(&b, z)?,
        Command::Ladder { lambda, p, range } => commands::ladder(lambda, p, range)?,
        Command::Sweep {
            mode,
            model,
            b,
            r,
            from,
            to,
            steps,
            im,
            tol,
        } => {
            let args = SweepArgs {
                mode,
                model: &model,
                b: b.as_deref(),
                r: r.as_deref(),
                from,
                to,
                steps,
                im,
                tol,
            };
            let mut buf = Vec::new();
            commands::sweep(&args, &mut buf)?;
            std::io::stdout().write_all(&buf).ok();
            return Ok(None);
        }
        Command::Verify => commands::verify(),
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                | ErrorKind::MissingSubcommand => EXIT_USAGE,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(f)) => {
            println!("{}", serde_json::to_string_pretty(&f.result).expect("result serializes"));
            if f.failed {
                ExitCode::from(EXIT_MATH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_mathematical() { EXIT_MATH } else { EXIT_INPUT })
        }
    }
}
