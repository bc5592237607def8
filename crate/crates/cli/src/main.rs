//! Command-line miner: CSV in, JSON or text report out, DIMACS export on
//! request. Exit codes: 0 success, 1 usage error, 2 infeasible threshold,
//! 3 resource cap hit (partial results are still emitted).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use gradsat::{
    encode, mine_with_k, report, threshold_to_k, Dataset, EncodeOptions, EncodingVariant,
    EnumerationStatus, Error, MineOptions, ReportFormat, SolverConfig, SymmetryMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    /// One clause per (item, transaction, position) naming the allowed
    /// successors.
    Successor,
    /// Ternary clauses forbidding each non-successor.
    Forbidden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymmetryArg {
    /// Block each mined pattern and its complement with two clauses.
    Blocking,
    /// Encode "lowest selected attribute increases" structurally.
    Static,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Mine frequent gradual patterns ("the higher p, the lower r") from a
/// numerical CSV dataset by CNF encoding and SAT model enumeration.
#[derive(Debug, Parser)]
#[command(name = "gradsat", version)]
struct Args {
    /// CSV dataset: header of attribute names, one row per transaction.
    #[arg(long)]
    input: PathBuf,

    /// Support threshold: fraction in (0,1] ("0.625", "5/8") or absolute
    /// chain length ("5").
    #[arg(long)]
    min_supp: String,

    /// Minimum number of items per pattern.
    #[arg(long, default_value_t = 2)]
    min_len: usize,

    /// Treat the first CSV column as transaction ids.
    #[arg(long)]
    id_column: bool,

    /// Order-constraint encoding.
    #[arg(long, value_enum, default_value_t = EncodingArg::Successor)]
    encoding: EncodingArg,

    /// Complement-symmetry handling.
    #[arg(long, value_enum, default_value_t = SymmetryArg::Blocking)]
    symmetry: SymmetryArg,

    /// Keep only closed patterns.
    #[arg(long)]
    closed: bool,

    /// Restrict chains to increasing row order.
    #[arg(long)]
    temporal: bool,

    /// Write the CNF instance to this path in DIMACS format.
    #[arg(long)]
    export_dimacs: Option<PathBuf>,

    /// Encode and print statistics without solving.
    #[arg(long)]
    encode_only: bool,

    /// Skip the oracle re-check of every mined pattern.
    #[arg(long)]
    no_verify: bool,

    /// Stop after this many enumerated models (exit code 3).
    #[arg(long)]
    max_models: Option<u64>,

    /// Conflict budget per solver run (exit code 3 when hit).
    #[arg(long)]
    max_conflicts: Option<u64>,

    /// Decision-heuristic seed; 0 keeps the unjittered variable order.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
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
    match run(&args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::InfeasibleThreshold(_) => 2,
                _ => 1,
            })
        }
    }
}

fn status_str(status: EnumerationStatus) -> &'static str {
    match status {
        EnumerationStatus::Complete => "complete",
        EnumerationStatus::ModelCapReached => "model-cap",
        EnumerationStatus::ConflictCapReached => "conflict-cap",
    }
}

fn run(args: &Args) -> gradsat::Result<ExitCode> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&args.input)?;
    let ds = Dataset::parse_csv(&text, args.id_column)?;
    let k = threshold_to_k(&args.min_supp, ds.num_transactions())?;
    let encode_options = EncodeOptions {
        variant: match args.encoding {
            EncodingArg::Successor => EncodingVariant::Successor,
            EncodingArg::Forbidden => EncodingVariant::Forbidden,
        },
        symmetry: match args.symmetry {
            SymmetryArg::Blocking => SymmetryMode::Blocking,
            SymmetryArg::Static => SymmetryMode::Static,
        },
        min_len: args.min_len,
        temporal: args.temporal,
    };
    eprintln!(
        "config: k={k} n={} m={} min_len={} encoding={} symmetry={} closed={} \
         temporal={} verify={} seed={}",
        ds.num_transactions(),
        ds.num_attributes(),
        args.min_len,
        match args.encoding {
            EncodingArg::Successor => "successor",
            EncodingArg::Forbidden => "forbidden",
        },
        match args.symmetry {
            SymmetryArg::Blocking => "blocking",
            SymmetryArg::Static => "static",
        },
        args.closed,
        args.temporal,
        !args.no_verify,
        args.seed,
    );

    if args.encode_only || args.export_dimacs.is_some() {
        let inst = encode(&ds, k, &encode_options)?;
        if let Some(path) = &args.export_dimacs {
            std::fs::write(path, inst.to_dimacs())?;
        }
        if args.encode_only {
            eprintln!(
                "vars={} clauses={} time={:.3}s",
                inst.num_vars(),
                inst.num_clauses(),
                start.elapsed().as_secs_f64()
            );
            return Ok(ExitCode::SUCCESS);
        }
    }

    let options = MineOptions {
        encode: encode_options,
        closed: args.closed,
        verify: !args.no_verify,
        solver: SolverConfig {
            seed: args.seed,
            max_models: args.max_models,
            max_conflicts: args.max_conflicts,
            ..SolverConfig::default()
        },
        ..MineOptions::default()
    };
    let outcome = mine_with_k(&ds, k, &options)?;
    let format = match args.format {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Text => ReportFormat::Text,
    };
    print!("{}", report(&outcome, &ds, format));
    eprintln!(
        "vars={} clauses={} time={:.3}s",
        outcome.stats.vars,
        outcome.stats.clauses,
        start.elapsed().as_secs_f64()
    );
    eprintln!(
        "models={} conflicts={} decisions={} extension_queries={} status={}",
        outcome.stats.models,
        outcome.stats.conflicts,
        outcome.stats.decisions,
        outcome.stats.extension_queries,
        status_str(outcome.status)
    );
    Ok(if outcome.status == EnumerationStatus::Complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
