use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minsurf::hierarchy::{Branch, ChainSpec, HierarchyError, Parity};
use minsurf::numcheck::DEFAULT_SEED;
use minsurf_cli::record::{latex_document, table, Document, Meta, RecordError, SymmetryRecord};
use minsurf_cli::suites::{self, CheckRecord, Options, Suite};
use serde::Serialize;

const EXIT_FAILURE: u8 = 1;
const EXIT_ESCAPE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "minsurf", version, about = "Contact symmetries and conservation laws of the minimal surface equation")]
struct Cli {
    /// Write the output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for the numeric checks.
    #[arg(long, global = true, env = "MINSURF_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one symmetry from its chain.
    Gen {
        #[arg(long)]
        parity: ParityArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value = "re")]
        branch: BranchArg,
        #[arg(long, default_value = "text")]
        format: GenFormat,
    },
    /// Run verification suites; prints a JSON summary.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteArg,
        /// Number of independent variables for the current and identity suites.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
    },
    /// Tabulated symmetries with their normalizations, then generated ones.
    Table {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
        #[arg(long, default_value = "json")]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Re,
    Im,
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Chains,
    Brackets,
    Currents,
    Noether,
    All,
}

#[derive(Serialize)]
struct Summary {
    passed: usize,
    failed: usize,
    closed_form_escape: bool,
}

#[derive(Serialize)]
struct VerifyDocument {
    meta: Meta,
    records: Vec<CheckRecord>,
    summary: Summary,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), u8> {
    let res = match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| {
        eprintln!("minsurf: cannot write output: {e}");
        EXIT_FAILURE
    })
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

fn record_failure(e: RecordError) -> u8 {
    eprintln!("minsurf: {e}");
    match e {
        RecordError::Hierarchy(HierarchyError::ClosedFormEscape { .. }) => EXIT_ESCAPE,
        _ => EXIT_FAILURE,
    }
}

fn run(cli: Cli) -> Result<(), u8> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match cli.command {
        Command::Gen { parity, k, branch, format } => {
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            let branch = match branch {
                BranchArg::Re => Branch::Re,
                BranchArg::Im => Branch::Im,
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let spec = ChainSpec::new(parity, k, branch);
            let (record, _) = SymmetryRecord::generated(spec, seed).map_err(record_failure)?;
            let text = match format {
                GenFormat::Text => format!("{}\n", record.display),
                GenFormat::Json => json(&Document { meta: Meta::new(seed), records: vec![record.clone()] }),
                GenFormat::Latex => latex_document(std::slice::from_ref(&record)).map_err(record_failure)?,
            };
            emit(&cli.out, &text)?;
            if record.verified {
                eprintln!("{spec}: verified");
                Ok(())
            } else {
                eprintln!("{spec}: self-verification failed");
                Err(EXIT_FAILURE)
            }
        }
        Command::Verify { suite, n, kmax } => {
            let suite = match suite {
                SuiteArg::Chains => Suite::Chains,
                SuiteArg::Brackets => Suite::Brackets,
                SuiteArg::Currents => Suite::Currents,
                SuiteArg::Noether => Suite::Noether,
                SuiteArg::All => Suite::All,
            };
            let outcome = suites::run(suite, Options { n: n as usize, kmax, seed });
            let failed = outcome.records.iter().filter(|r| !r.passed).count();
            for r in outcome.records.iter().filter(|r| !r.passed) {
                eprintln!("minsurf: failed {}: {} ({})", r.suite, r.claim, r.detail);
            }
            let doc = VerifyDocument {
                meta: Meta::new(seed),
                summary: Summary {
                    passed: outcome.records.len() - failed,
                    failed,
                    closed_form_escape: outcome.escaped,
                },
                records: outcome.records,
            };
            emit(&cli.out, &json(&doc))?;
            match (doc.summary.closed_form_escape, failed) {
                (true, _) => Err(EXIT_ESCAPE),
                (false, 0) => Ok(()),
                _ => Err(EXIT_FAILURE),
            }
        }
        Command::Table { kmax, format } => {
            let records = table(kmax, seed).map_err(record_failure)?;
            let all_verified = records.iter().all(|r| r.verified);
            let text = match format {
                TableFormat::Json => json(&Document { meta: Meta::new(seed), records }),
                TableFormat::Latex => latex_document(&records).map_err(record_failure)?,
            };
            emit(&cli.out, &text)?;
            if all_verified {
                Ok(())
            } else {
                eprintln!("minsurf: a tabulated symmetry failed verification");
                Err(EXIT_FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
