mod fg;
mod output;
mod parse;
mod zcmds;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tilearith::exec::Execution;
use tilearith::freegrp::DEFAULT_COVER_BUDGET;
use tilearith::zarith::DEFAULT_BOUNDEDNESS_TOL;

use output::{CliError, Emitter, Outcome, SCHEMA};
use zcmds::{SolveMode, SweepFamily};

/// Tiling and arithmeticity decisions for finite sets in ℤ and in free groups.
///
/// Every report is a JSON object. Exit codes: 0 success, 2 parse error,
/// 3 precondition violation, 4 budget or size limit reached.
#[derive(Debug, Parser)]
#[command(name = "tilearith", version)]
struct Cli {
    /// Omit timing fields so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    stable: bool,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_COVER_BUDGET)]
    budget: u64,
    /// Numerical tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUNDEDNESS_TOL)]
    tol: f64,
    /// Spaces per indentation level; 0 prints one line.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run sweeps and patch checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report for a comma-separated set of integers.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// A periodic, bounded or tiling-induced solution on a window.
    Solve {
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum)]
        mode: SolveMode,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 29, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Extends initial values to a solution and classifies its growth.
    Recur {
        #[arg(allow_hyphen_values = true)]
        set: String,
        /// The values at 0, …, max(K) − 1, as integers or fractions.
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 40, allow_hyphen_values = true)]
        hi: i64,
        /// Emit the window as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Periodic solvability and tiling for a fixed period n.
    Zn {
        #[arg(allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        n: u64,
    },
    /// Free-group operations.
    Fg {
        #[command(subcommand)]
        cmd: fg::FgCommand,
    },
    /// Checks an equivalence over a family of sets.
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
        /// Only counts and violations.
        #[arg(long)]
        summary: bool,
    },
    /// Cyclotomic tiling conditions.
    Cm {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Solve { .. } => "solve",
            Command::Recur { .. } => "recur",
            Command::Zn { .. } => "zn",
            Command::Fg { cmd } => match cmd {
                fg::FgCommand::Tile { .. } => "fg tile",
                fg::FgCommand::Solve { .. } => "fg solve",
                fg::FgCommand::Parity { .. } => "fg parity",
                fg::FgCommand::Cover { .. } => "fg cover",
            },
            Command::Sweep { .. } => "sweep",
            Command::Cm { .. } => "cm",
        }
    }
}

fn run(cli: &Cli, exec: Execution) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { set } => zcmds::analyze(&parse::zset(set)?),
        Command::Solve { set, mode, lo, hi } => {
            zcmds::solve(&parse::zset(set)?, *mode, *lo, *hi, cli.tol)
        }
        Command::Recur { set, init, lo, hi, .. } => {
            zcmds::recur(&parse::zset(set)?, &parse::rationals(init)?, *lo, *hi, cli.tol)
        }
        Command::Zn { set, n } => zcmds::zn(&parse::zset(set)?, *n),
        Command::Fg { cmd } => fg::run(cmd, cli.budget, exec),
        Command::Sweep { family, summary } => zcmds::run_sweep(family, exec, !summary),
        Command::Cm { set } => zcmds::cm(&parse::zset(set)?),
    }
}

fn recur_csv(cli: &Cli) -> Result<(), CliError> {
    let Command::Recur { set, init, lo, hi, .. } = &cli.command else {
        unreachable!()
    };
    let w = zcmds::recur_window(&parse::zset(set)?, &parse::rationals(init)?, *lo, *hi)?;
    let io = |e: csv::Error| CliError::precondition("IoError", e);
    match &cli.out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .map_err(|e| CliError::precondition("IoError", e))?;
            zcmds::write_csv(&w, f).map_err(io)
        }
        None => zcmds::write_csv(&w, std::io::stdout().lock()).map_err(io),
    }
}

/// Puts the envelope fields first so reports read top-down.
fn envelope(command: &str, input: Option<&str>, report: Value, elapsed: Option<f64>) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    let obj = v.as_object_mut().expect("object literal");
    if let Some(raw) = input {
        obj.insert("input".into(), json!(raw));
    }
    if let Value::Object(fields) = report {
        obj.extend(fields);
    }
    if let Some(ms) = elapsed {
        obj.insert("elapsed_ms".into(), json!(ms));
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emitter = Emitter {
        indent: cli.json_indent,
        out: cli.out.clone(),
    };
    let name = cli.command.name();
    if matches!(cli.command, Command::Recur { csv: true, .. }) {
        return match recur_csv(&cli) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => emitter.fail(name, e),
        };
    }
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let input = match &cli.command {
        Command::Analyze { set }
        | Command::Solve { set, .. }
        | Command::Recur { set, .. }
        | Command::Zn { set, .. }
        | Command::Cm { set } => Some(set.as_str()),
        _ => None,
    };

    let start = Instant::now();
    match run(&cli, exec) {
        Ok(outcome) => {
            let elapsed = (!cli.stable).then(|| start.elapsed().as_secs_f64() * 1e3);
            let v = envelope(name, input, outcome.report, elapsed);
            if let Err(e) = emitter.emit(&v) {
                eprintln!("{e}");
                return ExitCode::FAILURE;
            }
            if outcome.budget_exhausted {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => emitter.fail(name, e),
    }
}
