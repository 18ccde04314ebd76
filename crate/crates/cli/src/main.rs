use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use gpdcalc_core::report::VerificationReport;
use gpdcalc_core::suites::SuiteParams;
use gpdcalc_core::CalcError;

mod commands;
mod model;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TYPE: u8 = 3;

#[derive(Parser)]
#[command(name = "gpdcalc", version, about = "Exact calculus and verification suites for multiplicative forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the algebroid, objects and tagged properties of a model file.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Koszul bracket of two forms, or Schouten bracket of two multivectors.
    Bracket {
        file: PathBuf,
        #[arg(long)]
        poisson: Option<String>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        schouten: bool,
    },
    /// Differential of a named object.
    D {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        poisson: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &CalcError) -> u8 {
    match e {
        CalcError::Syntax { .. }
        | CalcError::UnknownCoordinate(_)
        | CalcError::InvalidChart(_)
        | CalcError::UnknownLabel(_)
        | CalcError::InvalidAlgebroid(_)
        | CalcError::InvalidBialgebra(_)
        | CalcError::Validation(_) => EXIT_USAGE,
        CalcError::ChartMismatch
        | CalcError::FrameMismatch(_)
        | CalcError::Degree(_)
        | CalcError::NotRhoCompatible(_)
        | CalcError::NotRightInverse
        | CalcError::InconsistentTheta(_)
        | CalcError::NotMultiplicative(_)
        | CalcError::NotInImage(_)
        | CalcError::NotVertical(_) => EXIT_TYPE,
    }
}

fn emit(report: &VerificationReport, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CalcError> {
    match cli.command {
        Command::Check { file, json } => {
            let m = model::load(&file)?;
            Ok(emit(&commands::check(&m)?, json))
        }
        Command::Bracket { file, poisson, left, right, schouten } => {
            let m = model::load(&file)?;
            println!("{}", commands::bracket(&m, poisson.as_deref(), &left, &right, schouten)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::D { file, object, poisson } => {
            let m = model::load(&file)?;
            println!("{}", commands::differential(&m, &object, poisson.as_deref())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, n, trials, seed, json } => {
            let start = Instant::now();
            let report = commands::verify(&suite, SuiteParams { n, trials, seed })?;
            eprintln!("verify {suite}: {:.2} s", start.elapsed().as_secs_f64());
            Ok(emit(&report, json))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
