use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use census_cli::golden::GoldenTables;
use census_cli::render::{self, Format};
use census_cli::sweep::{ratio_summary, sweep};
use census_cli::verify::verify;
use census_cli::CliError;
use census_core::arith::is_prime;
use census_core::quadratic::fundamental_unit;
use census_core::{census, OrderKind};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "census",
    version,
    about = "Abelian surfaces in the isogeny class of sqrt(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant for one prime.
    Info {
        p: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: InfoFormat,
    },
    /// One row per prime in [pmin, pmax].
    Sweep {
        pmin: u64,
        pmax: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: SweepFormat,
    },
    /// Recompute the reference tables and report mismatching cells.
    Verify {
        /// Directory holding table1.csv, table2.csv, table3.csv.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// zeta_F(-1) for F = Q(sqrt(p)).
    Zeta { p: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum InfoFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{p} is not prime")))
    }
}

fn emit(s: &str) -> Result<(), CliError> {
    std::io::stdout()
        .lock()
        .write_all(s.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info { p, format } => {
            require_prime(p)?;
            let c = census(p)?;
            let unit = fundamental_unit(p)?;
            let format = match format {
                InfoFormat::Table => Format::Table,
                InfoFormat::Json => Format::Json,
                InfoFormat::Csv => Format::Csv,
            };
            emit(&render::info(&c, &unit, format)?)
        }
        Command::Sweep { pmin, pmax, format } => {
            let rows = sweep(pmin, pmax)?;
            let out = match format {
                SweepFormat::Csv => render::csv_document(&rows)?,
                SweepFormat::Json => render::json_document(&rows),
            };
            emit(&out)?;
            if let Some(s) = ratio_summary(&rows, OrderKind::O1) {
                eprintln!(
                    "ell/mass {}: {} primes, max {} at p={}",
                    s.kind,
                    s.count,
                    render::rational(&s.max),
                    s.argmax
                );
            }
            Ok(())
        }
        Command::Verify { golden } => {
            let tables = match golden {
                Some(dir) => GoldenTables::load_dir(&dir)?,
                None => GoldenTables::embedded()?,
            };
            let report = verify(&tables)?;
            emit(&report.render())?;
            eprintln!("elapsed: {:.3?}", report.elapsed);
            if report.is_success() {
                Ok(())
            } else {
                Err(CliError::Mismatch(report.mismatches.len()))
            }
        }
        Command::Zeta { p } => {
            require_prime(p)?;
            let z = census_core::zeta::zeta_minus_one(p)?;
            emit(&format!("{}\n", render::rational(&z)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("census: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
