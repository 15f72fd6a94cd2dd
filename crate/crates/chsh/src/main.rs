use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chsh::commands::{self, MakeOptions, OracleOptions, ScanOptions, Verdict};
use chsh::format::{state_to_json, write_state};
use chsh::params::{Angle, Family};
use chsh::CliError;
use chsh_core::qmat::Tolerances;
use clap::{Parser, Subcommand};

/// Entanglement and CHSH nonlocality of two-qubit states.
///
/// Exit status: 0 on success or an affirmative verdict, 1 on a negative
/// verdict, 2 on invalid input.
#[derive(Debug, Parser)]
#[command(name = "chsh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Concurrence, EoF, maximal CHSH value, bound and optimal setting of a state file.
    Analyze {
        file: PathBuf,
        /// Comparison tolerance for the bound-membership verdict.
        #[arg(long, default_value_t = Tolerances::DEFAULT.compare_tol)]
        tol: f64,
        /// Print a JSON record instead of the text report.
        #[arg(long)]
        json: bool,
    },
    /// Analyze random states and write `id,C,eof,N,bound,slack` CSV.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rank of the sampled density matrices (default: cycle 1..=4).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4))]
        rank: Option<u64>,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = Tolerances::DEFAULT.compare_tol)]
        tol: f64,
    },
    /// Decide whether two states share an optimal CHSH operator.
    PairCheck {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = Tolerances::DEFAULT.compare_tol)]
        tol: f64,
    },
    /// Compare the closed-form maximal CHSH value against a direct search.
    OracleCompare {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points per sphere grid (at least 8).
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(8..))]
        grid: u64,
        /// Pattern-search sweeps after the grid stage.
        #[arg(long, default_value_t = 50)]
        refine: usize,
        /// Compare on this state file instead of random states.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Write a state of a named family as JSON.
    Make {
        /// gamma, omega, lambda, phi or vw (Greek letters accepted).
        #[arg(long)]
        family: Family,
        /// Angle, e.g. 0.3, pi/6 or 3pi/8.
        #[arg(long, allow_hyphen_values = true)]
        theta: Angle,
        /// Sign for the lambda and phi families.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        delta: f64,
        /// Mixing weight for the vw family.
        #[arg(long)]
        p: Option<f64>,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn tolerances(compare_tol: f64) -> Result<Tolerances, CliError> {
    let d = Tolerances::DEFAULT;
    Tolerances::new(d.eig_tol, compare_tol, d.psd_tol)
        .ok_or_else(|| CliError::Usage(format!("--tol must be positive and finite, got {compare_tol}")))
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Io { path: p.clone(), source })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Analyze { file, tol, json } => commands::analyze(&file, &tolerances(tol)?, json, &mut stdout),
        Command::Scan { count, seed, rank, out, tol } => {
            let opts = ScanOptions { count: count as usize, seed, rank: rank.map(|r| r as usize) };
            let tol = tolerances(tol)?;
            if out.is_some() {
                let mut file = open_output(&out)?;
                let verdict = commands::scan(&opts, &tol, &mut file, &mut stdout)?;
                file.flush()?;
                Ok(verdict)
            } else {
                drop(stdout);
                let mut csv = open_output(&None)?;
                let verdict = commands::scan(&opts, &tol, &mut csv, &mut io::stderr())?;
                csv.flush()?;
                Ok(verdict)
            }
        }
        Command::PairCheck { first, second, tol } => {
            commands::pair_check(&first, &second, &tolerances(tol)?, &mut stdout)
        }
        Command::OracleCompare { count, seed, grid, refine, state } => {
            let opts = OracleOptions { count, seed, grid: grid as usize, refine };
            commands::oracle_compare(&opts, state.as_deref(), &Tolerances::DEFAULT, &mut stdout)
        }
        Command::Make { family, theta, delta, p, out } => {
            let state = commands::make_state(&MakeOptions { family, theta: theta.0, delta, p })?;
            match out {
                Some(path) => write_state(&path, &state)?,
                None => writeln!(stdout, "{}", state_to_json(&state))?,
            }
            Ok(Verdict::Affirmative)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(v) => ExitCode::from(v.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
