//! `hardy-lambda`: solve, classify and certify dual extremal problems for
//! point evaluation on the unit ball of H¹.
//!
//! Results go to stdout (JSON or CSV), diagnostics to stderr.
//! Exit codes: 0 ok, 2 input validation, 3 numerical failure, 4 invariant breach.

mod commands;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hardy_lambda::grid::UnitGrid;
use hardy_lambda::Error;

use problem::{InputError, Problem, Settings};

#[derive(Parser)]
#[command(name = "hardy-lambda", version, about = "Dual extremal problems for point evaluation in H¹")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the extremal problem for the functional `c`.
    Extremal(Common),
    /// Classify the boundary form `form`.
    Classify(Common),
    /// Trace the boundary of a two-dimensional slice as CSV.
    Slice {
        #[command(flatten)]
        common: Common,
        /// Two orthonormal basis vectors as JSON: [[[re, im], ...], [[re, im], ...]].
        #[arg(long)]
        plane: Option<String>,
        #[arg(long, default_value_t = 256)]
        steps: usize,
    },
    /// Split a non-extreme form into two extreme forms with that midpoint.
    Decompose(Common),
    /// Verify the duality certificate of `form` (against `c` if present).
    Verify(Common),
    /// Compare the discretized reference solver with the exact support value.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON).
    problem: PathBuf,
    /// Grid size on the circle [default: 4096].
    #[arg(long)]
    grid: Option<usize>,
    /// Equality tolerance for certificates [default: 1e-8].
    #[arg(long)]
    tol: Option<f64>,
    /// Reference solver polynomial degree [default: 50].
    #[arg(long)]
    deg: Option<usize>,
    /// Random seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,
}

pub enum Failure {
    Input(String),
    Numerical(String),
    Invariant(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Input(e.to_string()),
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Numerical(m) | Failure::Invariant(m) => m,
        }
    }
}

fn load(common: &Common) -> Result<(Problem, Settings), Failure> {
    let problem = Problem::load(&common.problem)?;
    let opts = &problem.file.options;
    let grid_size = common.grid.or(opts.grid).unwrap_or(UnitGrid::DEFAULT_SIZE);
    let tol = common.tol.or(opts.tol).unwrap_or(1e-8);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Input(format!("tol must be positive, got {tol}")));
    }
    let settings = Settings {
        grid: UnitGrid::new(grid_size).map_err(|e| Failure::Input(format!("grid: {e}")))?,
        tol,
        deg: common.deg.or(opts.deg).unwrap_or(50),
        seed: common.seed.or(opts.seed).unwrap_or(0),
    };
    Ok((problem, settings))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Extremal(c) => load(&c).and_then(|(p, s)| commands::extremal(&p, &s)),
        Command::Classify(c) => load(&c).and_then(|(p, s)| commands::classify(&p, &s)),
        Command::Slice { common, plane, steps } => {
            load(&common).and_then(|(p, s)| commands::slice(&p, &s, plane.as_deref(), steps))
        }
        Command::Decompose(c) => load(&c).and_then(|(p, s)| commands::decompose(&p, &s)),
        Command::Verify(c) => load(&c).and_then(|(p, s)| commands::verify(&p, &s)),
        Command::Oracle(c) => load(&c).and_then(|(p, s)| commands::oracle(&p, &s)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
