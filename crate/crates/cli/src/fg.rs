//! Subcommands over finite subsets of free groups.

use std::collections::HashSet;

use serde_json::{json, Value};

use tilearith::freegrp::{
    ball_words, bounded_nonperiodic_solution, check_parity_balance, cover_search, greedy_tiling,
    parity_example_set, parity_solution, tiling_to_solution_fg, verify_partial_tiling,
    verify_solution_patch_with, CoverOutcome, FGSet, FgError, Word,
};
use tilearith::exec::Execution;

use crate::output::{to_value, CliError, Outcome};
use crate::parse::FgSetArgs;

#[derive(Debug, Clone, clap::Subcommand)]
pub enum FgCommand {
    /// Greedy partial tiling of a ball by left translates, and the solution it induces.
    Tile {
        #[command(flatten)]
        set: FgSetArgs,
        #[arg(long = "R", value_name = "R")]
        radius: usize,
    },
    /// Bounded solution with pairwise distinct designated values on a ball.
    Solve {
        #[command(flatten)]
        set: FgSetArgs,
        #[arg(long = "R", value_name = "R")]
        radius: usize,
        /// Include the per-step construction log.
        #[arg(long)]
        log: bool,
    },
    /// The ±1 parity solution; uses a built-in balanced set when none is given.
    Parity {
        #[command(flatten)]
        set: FgSetArgs,
        #[arg(long = "R", value_name = "R")]
        radius: usize,
    },
    /// Exhaustive search for disjoint translates covering a ball.
    Cover {
        #[command(flatten)]
        set: FgSetArgs,
        #[arg(long = "R", value_name = "R")]
        radius: usize,
    },
}

fn fgerr(e: FgError) -> CliError {
    let kind = match &e {
        FgError::Parse(_) | FgError::BadRank(_) | FgError::Duplicate(_) => {
            return CliError::Parse(e.to_string())
        }
        FgError::RankMismatch(..) => "RankMismatch",
        FgError::Empty => "Empty",
        FgError::NotConnected => "NotConnected",
        FgError::NoValidShift(_) => "NoValidShift",
        FgError::InsufficientCoverage(_) => "InsufficientCoverage",
        FgError::DegenerateTile => "DegenerateTile",
        FgError::HypothesesViolated(_) => "HypothesesViolated",
        FgError::NoFreshCell(_) => "NoFreshCell",
    };
    CliError::precondition(kind, e)
}

/// Disjointness and coverage of `B_radius` by `h·T`, checked directly.
fn check_cover(t: &FGSet, shifts: &[Word], radius: usize) -> Value {
    let mut seen = HashSet::new();
    let disjoint = shifts
        .iter()
        .flat_map(|h| t.left_translate(h))
        .all(|x| seen.insert(x));
    let ball = ball_words(t.rank(), radius).unwrap_or_default();
    let covers = ball.iter().all(|w| seen.contains(w));
    json!({ "disjoint": disjoint, "covers_ball": covers, "ok": disjoint && covers })
}

pub fn run(cmd: &FgCommand, budget: u64, exec: Execution) -> Result<Outcome, CliError> {
    match cmd {
        FgCommand::Tile { set, radius } => {
            let k = set.require()?;
            let t = greedy_tiling(&k, *radius).map_err(fgerr)?;
            let tiling_check = verify_partial_tiling(&t.base, &t.shifts, *radius);
            let patch = tiling_to_solution_fg(&k, &t, *radius).map_err(fgerr)?;
            let patch_check = verify_solution_patch_with(&k, &patch, exec);
            Ok(Outcome::done(json!({
                "set": k,
                "radius": radius,
                "tiling": t,
                "verification": tiling_check,
                "solution": { "patch": patch, "verification": patch_check },
            })))
        }
        FgCommand::Solve { set, radius, log } => {
            let k = set.require()?;
            let b = bounded_nonperiodic_solution(&k, *radius).map_err(fgerr)?;
            let check = verify_solution_patch_with(&k, &b.patch, exec);
            let mut v = json!({
                "set": k,
                "radius": radius,
                "patch": b.patch,
                "steps": b.log.len(),
                "all_distinct": b.all_distinct,
                "max_abs_value": b.max_abs_value,
                "verification": check,
            });
            if *log {
                v["log"] = to_value(&b.log);
            }
            Ok(Outcome::done(v))
        }
        FgCommand::Parity { set, radius } => {
            let k = match set.build()? {
                Some(k) => k,
                None if set.rank == 2 => parity_example_set(),
                None => {
                    return Err(CliError::Parse("the built-in set has rank 2; pass --set".into()))
                }
            };
            let (odd, even) = k.count_by_parity();
            let patch = parity_solution(k.rank(), *radius).map_err(fgerr)?;
            let check = verify_solution_patch_with(&k, &patch, exec);
            Ok(Outcome::done(json!({
                "set": k,
                "radius": radius,
                "odd": odd,
                "even": even,
                "balanced": check_parity_balance(&k),
                "patch": patch,
                "verification": check,
            })))
        }
        FgCommand::Cover { set, radius } => {
            let k = set.require()?;
            let r = cover_search(&k, *radius, budget);
            let verification = match &r.outcome {
                CoverOutcome::Sat(shifts) => check_cover(&k, shifts, *radius),
                _ => Value::Null,
            };
            Ok(Outcome {
                budget_exhausted: r.outcome == CoverOutcome::Unknown,
                report: json!({
                    "set": k,
                    "radius": radius,
                    "search": r,
                    "verification": verification,
                }),
            })
        }
    }
}
