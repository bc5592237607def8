//! AllSAT front end: reads a DIMACS CNF file (or standard input) and emits
//! every model as space-separated signed integers, one model per line.
//! Exit codes: 0 all models enumerated, 1 usage error, 3 cap reached.

use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use gradsat::{enumerate_all_models, CnfFormula, EnumerationStatus, SolverConfig};

/// Enumerate all models of a DIMACS CNF formula.
#[derive(Debug, Parser)]
#[command(name = "gradsat-allsat", version)]
struct Args {
    /// DIMACS CNF file; standard input when omitted.
    input: Option<PathBuf>,

    /// Decision-heuristic seed; 0 keeps the unjittered variable order.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Stop after this many models (exit code 3).
    #[arg(long)]
    max_models: Option<u64>,

    /// Conflict budget (exit code 3 when hit).
    #[arg(long)]
    max_conflicts: Option<u64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };

    let text = match &args.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: stdin: {e}");
                return ExitCode::from(1);
            }
            buf
        }
    };
    let formula = match CnfFormula::parse_dimacs(text.as_bytes()) {
        Ok(formula) => formula,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let config = SolverConfig {
        seed: args.seed,
        max_models: args.max_models,
        max_conflicts: args.max_conflicts,
        ..SolverConfig::default()
    };
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = enumerate_all_models(&formula, config, |model| {
        let mut line = String::with_capacity(model.len() * 3);
        for (index, &value) in model.iter().enumerate() {
            if index > 0 {
                line.push(' ');
            }
            if !value {
                line.push('-');
            }
            line.push_str(&(index + 1).to_string());
        }
        writeln!(out, "{line}").expect("write model line");
    });
    out.flush().expect("flush model lines");

    let status = match result.status {
        EnumerationStatus::Complete => "complete",
        EnumerationStatus::ModelCapReached => "model-cap",
        EnumerationStatus::ConflictCapReached => "conflict-cap",
    };
    eprintln!("models={} status={status}", result.models);
    if result.status == EnumerationStatus::Complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
