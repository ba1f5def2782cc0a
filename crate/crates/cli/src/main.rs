use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use liess_cli::{execute, Command, ExitStatus, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Validate the document and the coefficient rows
    Check,
    /// Betti numbers of g, n, h and the E_2 grid
    Cohomology,
    /// Every page of the spectral sequence, its length and the differential census
    Ss,
    /// Run the theorem checks; exit 2 on any failure
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact cohomology and Hochschild–Serre spectral sequences of split Lie algebra extensions.
#[derive(Debug, Parser)]
#[command(name = "liess", version)]
struct Args {
    command: Cmd,
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Last page listed by `ss` (at least 2)
    #[arg(long, value_name = "R", value_parser = clap::value_parser!(u64).range(2..))]
    max_page: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::InvalidInput.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("liess: cannot read {}: {e}", args.file.display());
            return ExitCode::from(ExitStatus::InvalidInput.code());
        }
    };
    let command = match args.command {
        Cmd::Check => Command::Check,
        Cmd::Cohomology => Command::Cohomology,
        Cmd::Ss => Command::Ss,
        Cmd::Verify => Command::Verify,
    };
    let options = Options {
        max_page: args.max_page.map(|r| r as usize),
        timing: args.timing,
    };
    let outcome = execute(command, &text, options);
    let rendered = match args.format {
        Format::Text => outcome.report.to_text(),
        Format::Json => outcome.report.to_json(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("liess: cannot write {}: {e}", path.display());
                return ExitCode::from(ExitStatus::InternalFailure.code());
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.status.code())
}
