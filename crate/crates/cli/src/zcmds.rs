//! Subcommands over finite subsets of the integers.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use tilearith::exec::Execution;
use tilearith::intpoly::is_prime_power;
use tilearith::rational::RationalRepr;
use tilearith::sweep;
use tilearith::zarith::{
    classify_boundedness, coven_meyerowitz_report, decide_tile_z, extend_recurrence,
    integral_periodic_solution, is_arithmetic_zn, is_b_arithmetic, is_p_arithmetic,
    make_bounded_solution, mask_polynomial, newman_exponent, tile_zn_exact_cover,
    tiling_to_solution, verify_zn_cover, ZError, ZSet, MAX_AUTOMATON_DIAMETER,
};

use crate::output::{to_value, CliError, Outcome};

pub fn zerr(e: ZError) -> CliError {
    let kind = match &e {
        ZError::Empty | ZError::DuplicateElements(_) => return CliError::Parse(e.to_string()),
        ZError::DoesNotGenerate => "DoesNotGenerate",
        ZError::CardinalityNotPrime(_) => "CardinalityNotPrime",
        ZError::BadModulus(_) | ZError::ModulusTooSmall { .. } => "BadModulus",
        ZError::WrongInitialCount { .. } => "WrongInitialCount",
        ZError::NotBArithmetic => "NotBArithmetic",
        ZError::BadCertificate(_) => "BadCertificate",
        ZError::BadParameters(_) => "BadParameters",
        ZError::TooLarge(_) => "TooLarge",
        ZError::Poly(_) | ZError::Lin(_) => "InternalError",
    };
    CliError::precondition(kind, e)
}

fn is_prime(n: u64) -> bool {
    is_prime_power(n) == Some(n)
}

fn tile_block(k: &ZSet) -> Result<(Value, Option<bool>), CliError> {
    match decide_tile_z(k) {
        Ok(t) => {
            let mut v = to_value(&t);
            v["method"] = json!("automaton");
            Ok((v, Some(t.is_tile)))
        }
        Err(ZError::TooLarge(d)) => Ok((
            json!({ "status": "too_large", "diameter": d, "limit": MAX_AUTOMATON_DIAMETER }),
            None,
        )),
        Err(e) => Err(zerr(e)),
    }
}

/// Past the automaton's size limit, answers that follow from necessary
/// conditions or from the prime-cardinality test.
fn tile_fallback(p: Option<u64>, t1: bool, newman_tile: Option<bool>) -> Option<(bool, &'static str)> {
    if p.is_none() {
        Some((false, "not_p_arithmetic"))
    } else if !t1 {
        Some((false, "t1_fails"))
    } else {
        newman_tile.map(|t| (t, "prime_cardinality"))
    }
}

fn newman_block(k: &ZSet) -> Result<Value, CliError> {
    if !is_prime(k.len() as u64) {
        return Ok(Value::Null);
    }
    let e = newman_exponent(k).map_err(zerr)?;
    Ok(json!({ "exponent": e, "tile": e.is_some() }))
}

pub fn analyze(k: &ZSet) -> Result<Outcome, CliError> {
    if k.len() < 2 {
        return Err(CliError::precondition("TooFewElements", "need at least two elements"));
    }
    // Dividing out gcd(K) changes none of the properties below.
    let a = k.primitive();
    let (b, circle_roots) = is_b_arithmetic(&a).map_err(zerr)?;
    let p = is_p_arithmetic(&a).map_err(zerr)?;
    let cm = coven_meyerowitz_report(&a);
    let (mut tile, mut is_tile) = tile_block(&a)?;
    let newman = newman_block(&a)?;
    let newman_tile = newman.get("tile").and_then(Value::as_bool);
    if is_tile.is_none() {
        if let Some((t, method)) = tile_fallback(p, cm.t1, newman_tile) {
            tile = json!({ "is_tile": t, "method": method, "limit": MAX_AUTOMATON_DIAMETER });
            is_tile = Some(t);
        }
    }

    let tile_implies_p = is_tile != Some(true) || p.is_some();
    let p_implies_b = p.is_none() || b;
    let newman_agrees = match (newman_tile, is_tile) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    };
    let report = json!({
        "set": k,
        "analyzed": a,
        "size": k.len(),
        "diameter": k.max(),
        "mask_polynomial": mask_polynomial(&a),
        "generates": k.generates(),
        "b_arithmetic": { "value": b, "unit_circle_roots": circle_roots },
        "p_arithmetic": p,
        "coven_meyerowitz": cm,
        "tile": tile,
        "newman": newman,
        "consistency": {
            "tile_implies_p_arithmetic": tile_implies_p,
            "p_implies_b_arithmetic": p_implies_b,
            "newman_agrees": newman_agrees,
            "ok": tile_implies_p && p_implies_b && newman_agrees,
        },
    });
    Ok(Outcome {
        report,
        budget_exhausted: is_tile.is_none(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SolveMode {
    Integral,
    Bounded,
    FromTile,
}

pub fn solve(k: &ZSet, mode: SolveMode, lo: i64, hi: i64, tol: f64) -> Result<Outcome, CliError> {
    if lo > hi {
        return Err(CliError::Parse(format!("empty window [{lo}, {hi}]")));
    }
    let report = match mode {
        SolveMode::Integral => {
            let sol = integral_periodic_solution(k)
                .map_err(zerr)?
                .ok_or_else(|| {
                    CliError::precondition("NotPArithmetic", "no nontrivial periodic solution")
                })?;
            let n = sol.period as i64;
            let window: Vec<Value> = (lo..=hi)
                .map(|g| {
                    let v = &sol.values[g.rem_euclid(n) as usize];
                    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
                })
                .collect();
            json!({
                "mode": "integral",
                "set": k,
                "solution": sol,
                "window": { "lo": lo, "hi": hi, "values": window },
                "verification": { "equations_checked": sol.period, "ok": sol.verified },
            })
        }
        SolveMode::Bounded => {
            let sol = make_bounded_solution(k, lo, hi).map_err(zerr)?;
            let ok = sol.max_relative_residual <= tol;
            json!({
                "mode": "bounded",
                "set": k,
                "angles": sol.angles,
                "window": sol.window,
                "verification": {
                    "equations_checked": sol.equations_checked,
                    "max_abs_residual": sol.max_abs_residual,
                    "max_relative_residual": sol.max_relative_residual,
                    "tol": tol,
                    "ok": ok,
                },
            })
        }
        SolveMode::FromTile => {
            let t = decide_tile_z(k).map_err(zerr)?;
            let cert = t
                .certificate
                .ok_or_else(|| CliError::precondition("NotATile", "the set does not tile"))?;
            let sol = tiling_to_solution(k, &cert).map_err(zerr)?;
            json!({
                "mode": "from_tile",
                "set": k,
                "certificate": cert,
                "solution": sol,
                "window": sol.window(lo, hi),
                "verification": { "equations_checked": sol.period, "ok": sol.satisfies(k) },
            })
        }
    };
    Ok(Outcome::done(report))
}

pub struct RecurWindow {
    pub lo: i64,
    pub values: Vec<BigRational>,
}

pub fn recur_window(k: &ZSet, init: &[BigRational], lo: i64, hi: i64) -> Result<RecurWindow, CliError> {
    let w = extend_recurrence(k, init, lo, hi).map_err(zerr)?;
    Ok(RecurWindow {
        lo: w.lo,
        values: w.values,
    })
}

pub fn recur(k: &ZSet, init: &[BigRational], lo: i64, hi: i64, tol: f64) -> Result<Outcome, CliError> {
    let w = extend_recurrence(k, init, lo, hi).map_err(zerr)?;
    let boundedness = classify_boundedness(k, init, tol).map_err(zerr)?;
    let sup = w
        .values
        .iter()
        .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let initial: Vec<RationalRepr> = init.iter().map(RationalRepr::from).collect();
    Ok(Outcome::done(json!({
        "set": k,
        "initial": initial,
        "window": w,
        "satisfies": w.satisfies(k),
        "max_abs_on_window": sup,
        "boundedness": boundedness,
    })))
}

pub fn write_csv(w: &RecurWindow, out: impl std::io::Write) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(out);
    wr.write_record(["n", "num", "den", "approx"])?;
    for (i, v) in w.values.iter().enumerate() {
        let n = w.lo + i as i64;
        let approx = v.to_f64().unwrap_or(f64::NAN);
        wr.write_record([
            n.to_string(),
            v.numer().to_string(),
            v.denom().to_string(),
            approx.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn zn(k: &ZSet, n: u64) -> Result<Outcome, CliError> {
    let arithmetic = is_arithmetic_zn(k, n).map_err(zerr)?;
    let cover = tile_zn_exact_cover(k, n).map_err(zerr)?;
    let verified = match &cover {
        Some(offsets) => verify_zn_cover(k, n, offsets).is_ok(),
        None => false,
    };
    Ok(Outcome::done(json!({
        "set": k,
        "n": n,
        "arithmetic": arithmetic,
        "tile": cover.is_some(),
        "offsets": cover,
        "cover_verified": verified,
    })))
}

pub fn cm(k: &ZSet) -> Result<Outcome, CliError> {
    let a = k.primitive();
    let (tile, is_tile) = tile_block(&a)?;
    let report = coven_meyerowitz_report(&a);
    let both = report.t1 && report.t2;
    Ok(Outcome {
        report: json!({
            "set": k,
            "analyzed": a,
            "coven_meyerowitz": report,
            "t1_and_t2": both,
            "tile": tile,
            // Both conditions suffice for tiling; T1 is necessary.
            "consistent": match is_tile {
                Some(t) => (!both || t) && (!t || report.t1),
                None => true,
            },
        }),
        budget_exhausted: is_tile.is_none(),
    })
}

#[derive(Debug, Clone, clap::Subcommand)]
pub enum SweepFamily {
    /// Three-element sets with maximum at most `max`.
    K3 {
        #[arg(long, default_value_t = 20)]
        max: u64,
    },
    /// Four-element sets with maximum at most `max`.
    K4 {
        #[arg(long, default_value_t = 15)]
        max: u64,
    },
    /// The p-arithmetic non-tiles for the given primes.
    PrimeFamily {
        #[arg(long, default_value = "5,7,11,13")]
        primes: String,
    },
    /// The scaled family for `p:d` pairs.
    CompositeFamily {
        #[arg(long, default_value = "2:2,2:3,3:2,3:3,5:2,5:3,7:2")]
        pairs: String,
    },
    /// Automaton against exact cover of ℤ_n for every set with maximum at most `max`.
    OracleCover {
        #[arg(long, default_value_t = 10)]
        max: u64,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
    /// Prime-cardinality criterion against the automaton.
    OracleNewman {
        #[arg(long, default_value_t = 12)]
        max: u64,
    },
    /// Three characterizations of periodic solvability.
    Periodic {
        #[arg(long, default_value_t = 8)]
        max: u64,
    },
}

fn sweep_value<R: serde::Serialize>(r: &sweep::SweepReport<R>, rows: bool) -> Value {
    let mut v = json!({
        "family": r.family,
        "checked": r.checked,
        "violations": r.violations,
        "clean": r.is_clean(),
    });
    if rows {
        v["rows"] = to_value(&r.rows);
    }
    v
}

const MAX_SWEEP_BITS: u64 = 24;

pub fn run_sweep(family: &SweepFamily, exec: Execution, rows: bool) -> Result<Outcome, CliError> {
    let limit = |max: u64, cap: u64| {
        if max > cap {
            Err(CliError::precondition("BadBounds", format!("max must be at most {cap}")))
        } else {
            Ok(max)
        }
    };
    let bound = |max| limit(max, MAX_SWEEP_BITS);
    let v = match family {
        SweepFamily::K3 { max } => {
            let max = limit(*max, MAX_AUTOMATON_DIAMETER)?;
            sweep_value(&sweep::sweep_k3(max, exec).map_err(zerr)?, rows)
        }
        SweepFamily::K4 { max } => {
            let max = limit(*max, MAX_AUTOMATON_DIAMETER)?;
            sweep_value(&sweep::sweep_k4(max, exec).map_err(zerr)?, rows)
        }
        SweepFamily::PrimeFamily { primes } => {
            let ps: Vec<u64> = crate::parse::integers(primes)?
                .into_iter()
                .map(|p| p as u64)
                .collect();
            sweep_value(&sweep::sweep_prime_family(&ps, exec).map_err(zerr)?, rows)
        }
        SweepFamily::CompositeFamily { pairs } => {
            let ps = crate::parse::pairs(pairs)?;
            sweep_value(&sweep::sweep_composite_family(&ps, exec).map_err(zerr)?, rows)
        }
        SweepFamily::OracleCover { max, n_max } => {
            let r = sweep::oracle_tile_vs_cover(bound(*max)?, *n_max, exec).map_err(zerr)?;
            sweep_value(&r, rows)
        }
        SweepFamily::OracleNewman { max } => {
            sweep_value(&sweep::oracle_newman(bound(*max)?, exec).map_err(zerr)?, rows)
        }
        SweepFamily::Periodic { max } => {
            let sets: Vec<ZSet> = sweep::all_sets_up_to(bound(*max)?)
                .into_iter()
                .filter(|k| k.len() >= 2 && k.generates())
                .collect();
            sweep_value(&sweep::sweep_periodic_equivalence(&sets, exec).map_err(zerr)?, rows)
        }
    };
    Ok(Outcome::done(v))
}

/// Sums over every cyclic window, for tests.
#[cfg(test)]
fn cyclic_sums_vanish(k: &ZSet, values: &[i64]) -> bool {
    let n = values.len();
    (0..n).all(|g| {
        k.elements()
            .iter()
            .map(|&s| values[(g + s as usize) % n])
            .sum::<i64>()
            == 0
    })
}
