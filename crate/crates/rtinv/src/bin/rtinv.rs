//! Command line front end: theory tables, invariant evaluations and the
//! consistency suites.
//!
//! Exit codes: 0 on success, 2 for parse or i/o errors, 3 for other
//! evaluation errors (domain, capacity, degeneracy, unsupported), 4 when a
//! verification suite runs but finds failing checks.

use clap::{Parser, Subcommand};
use rtinv::io::{cached_theory_data, parse_manifold, parse_theory, ResultRecord};
use rtinv::verify::run_suite;
use rtinv::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rtinv",
    about = "Quantum invariants of closed oriented 3-manifolds from surgery presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print (or write) the serialized data tables of a theory.
    Data {
        /// Theory string, e.g. su:N=2,k=3 or parafermion:k=2.
        #[arg(long)]
        theory: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the invariant of a surgery presentation.
    Tau {
        /// Theory string.
        #[arg(long)]
        theory: String,
        /// Manifold string: lens:p,q | chain:a1,... | link:<path>.
        #[arg(long)]
        manifold: String,
    },
    /// Run a consistency suite: modular, skein, coset, crossfamily or all.
    Verify {
        /// Suite name.
        suite: String,
    },
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Data { theory, out } => {
            let spec = parse_theory(&theory)?;
            let (text, hit) = cached_theory_data(&spec)?;
            if hit {
                eprintln!("cache hit for {spec}");
            }
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { theory, manifold } => {
            let spec = parse_theory(&theory)?;
            let m = parse_manifold(&manifold)?;
            let start = Instant::now();
            let tau = rtinv::invariant::tau(&spec, &m)?;
            let record = ResultRecord {
                theory: spec.to_string(),
                manifold,
                tau,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            println!("{record}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let reports = run_suite(&suite)?;
            let mut failures = 0usize;
            for report in &reports {
                print!("{}", report.render());
                failures += report.failures();
            }
            if failures > 0 {
                Ok(ExitCode::from(4))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
