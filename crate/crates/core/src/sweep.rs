//! Exhaustive checks of the equivalences between tiling, periodic and
//! bounded solvability over families of small sets.
//!
//! Every sweep maps one pure row function over its input list with the
//! requested [`Execution`]; rows come back in input order either way.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::exec::Execution;
use crate::zarith::{
    coven_meyerowitz_report, decide_tile_z, family_parith_nontile,
    family_parith_nontile_composite, integral_periodic_solution, is_arithmetic_zn,
    is_b_arithmetic, is_p_arithmetic, newman_prime_test, normalize_set, tile_zn_exact_cover,
    tiling_to_solution, ZError, ZSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub set: ZSet,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport<R> {
    pub family: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub rows: Vec<R>,
}

impl<R> SweepReport<R> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn collect<R>(
    family: &str,
    rows: Vec<Result<R, ZError>>,
    check: impl Fn(&R) -> Option<Violation>,
) -> Result<SweepReport<R>, ZError> {
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let violations = rows.iter().filter_map(check).collect();
    Ok(SweepReport {
        family: family.to_string(),
        checked: rows.len(),
        violations,
        rows,
    })
}

fn violation(set: &ZSet, reason: impl Into<String>) -> Option<Violation> {
    Some(Violation {
        set: set.clone(),
        reason: reason.into(),
    })
}

/// For a tile: the two-level periodic solution from its certificate solves
/// `A(K)` and takes exactly the values `|K| − 1` and `−1`.
pub fn two_level_solution_holds(k: &ZSet) -> Result<Option<bool>, ZError> {
    let res = decide_tile_z(k)?;
    let Some(cert) = res.certificate else {
        return Ok(None);
    };
    let sol = tiling_to_solution(k, &cert)?;
    let top = k.len() as i64 - 1;
    let two_valued = sol.values.iter().all(|&v| v == top || v == -1)
        && (k.len() == 1 || sol.values.contains(&top) && sol.values.contains(&-1));
    Ok(Some(sol.satisfies(k) && two_valued))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Row {
    pub set: ZSet,
    pub b_arithmetic: bool,
    pub tile: bool,
    /// `{a mod 3, b mod 3} = {1, 2}`
    pub mod3_pattern: bool,
    pub t1: Option<bool>,
    pub two_level_solution: Option<bool>,
}

fn k3_row(a: u64, b: u64) -> Result<K3Row, ZError> {
    let set = normalize_set(&[0, a as i64, b as i64])?;
    let (b_arithmetic, _) = is_b_arithmetic(&set)?;
    let tile = decide_tile_z(&set)?.is_tile;
    let mut residues = [a % 3, b % 3];
    residues.sort_unstable();
    Ok(K3Row {
        b_arithmetic,
        tile,
        mod3_pattern: residues == [1, 2],
        t1: tile.then(|| coven_meyerowitz_report(&set).t1),
        two_level_solution: two_level_solution_holds(&set)?,
        set,
    })
}

/// `{0, a, b}` with `0 < a < b ≤ max`, `gcd(a, b) = 1`.
pub fn sweep_k3(max: u64, exec: Execution) -> Result<SweepReport<K3Row>, ZError> {
    let params: Vec<(u64, u64)> = (1..=max)
        .flat_map(|b| (1..b).map(move |a| (a, b)))
        .filter(|&(a, b)| a.gcd(&b) == 1)
        .collect();
    let rows = exec.map(&params, |&(a, b)| k3_row(a, b));
    collect("k3", rows, |r| {
        if r.b_arithmetic != r.tile {
            violation(&r.set, "b-arithmetic differs from tile")
        } else if r.tile != r.mod3_pattern {
            violation(&r.set, "tile differs from the mod-3 pattern")
        } else if r.tile && r.t1 != Some(true) {
            violation(&r.set, "tile without T1")
        } else if r.tile && r.two_level_solution != Some(true) {
            violation(&r.set, "two-level solution fails")
        } else {
            None
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Row {
    pub set: ZSet,
    /// The decisions are made on `K / gcd(K)`.
    pub analyzed: ZSet,
    pub b_arithmetic: bool,
    pub p_witness: Option<u64>,
    pub tile: bool,
    pub t1: Option<bool>,
}

fn k4_row(a: u64, b: u64, c: u64) -> Result<K4Row, ZError> {
    let set = normalize_set(&[0, c as i64, b as i64, a as i64])?;
    let analyzed = set.primitive();
    let (b_arithmetic, _) = is_b_arithmetic(&analyzed)?;
    let tile = decide_tile_z(&set)?.is_tile;
    Ok(K4Row {
        b_arithmetic,
        p_witness: is_p_arithmetic(&analyzed)?,
        tile,
        t1: tile.then(|| coven_meyerowitz_report(&set).t1),
        set,
        analyzed,
    })
}

/// `{0, c, b, a}` with `0 < c < b < a ≤ max`.
pub fn sweep_k4(max: u64, exec: Execution) -> Result<SweepReport<K4Row>, ZError> {
    let params: Vec<(u64, u64, u64)> = (1..=max)
        .flat_map(|a| (1..a).flat_map(move |b| (1..b).map(move |c| (a, b, c))))
        .collect();
    let rows = exec.map(&params, |&(a, b, c)| k4_row(a, b, c));
    collect("k4", rows, |r| {
        if r.b_arithmetic != r.p_witness.is_some() {
            violation(&r.set, "b-arithmetic differs from p-arithmetic")
        } else if r.tile && r.p_witness.is_none() {
            violation(&r.set, "tile that is not p-arithmetic")
        } else if r.tile && r.t1 != Some(true) {
            violation(&r.set, "tile without T1")
        } else {
            None
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub p: u64,
    pub d: Option<u64>,
    pub set: ZSet,
    pub p_witness: Option<u64>,
    pub tile: bool,
    pub t1: bool,
    /// Only for prime cardinality.
    pub newman: Option<bool>,
}

fn family_row(p: u64, d: Option<u64>) -> Result<FamilyRow, ZError> {
    let set = match d {
        None => family_parith_nontile(p)?,
        Some(d) => family_parith_nontile_composite(p, d)?,
    };
    let newman = match newman_prime_test(&set) {
        Ok(v) => Some(v),
        Err(ZError::CardinalityNotPrime(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(FamilyRow {
        p,
        d,
        p_witness: is_p_arithmetic(&set)?,
        tile: decide_tile_z(&set)?.is_tile,
        t1: coven_meyerowitz_report(&set).t1,
        newman,
        set,
    })
}

fn family_check(r: &FamilyRow) -> Option<Violation> {
    if r.p_witness.is_none() {
        violation(&r.set, "family member is not p-arithmetic")
    } else if r.tile {
        violation(&r.set, "family member is a tile")
    } else if r.newman == Some(true) {
        violation(&r.set, "prime-cardinality test calls it a tile")
    } else {
        None
    }
}

pub fn sweep_prime_family(primes: &[u64], exec: Execution) -> Result<SweepReport<FamilyRow>, ZError> {
    let rows = exec.map(primes, |&p| family_row(p, None));
    collect("prime-family", rows, family_check)
}

pub fn sweep_composite_family(
    params: &[(u64, u64)],
    exec: Execution,
) -> Result<SweepReport<FamilyRow>, ZError> {
    let rows = exec.map(params, |&(p, d)| family_row(p, Some(d)));
    collect("composite-family", rows, family_check)
}

/// All sets `{0} ∪ S` with `S ⊆ [1, max]`, ordered by bitmask.
pub fn all_sets_up_to(max: u64) -> Vec<ZSet> {
    (0u64..1 << max)
        .map(|mask| {
            let raw: Vec<i64> = std::iter::once(0)
                .chain((1..=max).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| i as i64))
                .collect();
            normalize_set(&raw).expect("distinct")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverRow {
    pub set: ZSet,
    pub tile: bool,
    /// Smallest admissible `n ≤ bound` for which ℤ_n has an exact cover.
    pub cover_period: Option<u64>,
}

fn cover_row(set: &ZSet, n_max: u64) -> Result<CoverRow, ZError> {
    let tile = decide_tile_z(set)?.is_tile;
    let mut cover_period = None;
    for n in 1..=n_max {
        match tile_zn_exact_cover(set, n) {
            Ok(Some(_)) => {
                cover_period = Some(n);
                break;
            }
            Ok(None) | Err(ZError::BadModulus(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(CoverRow {
        set: set.clone(),
        tile,
        cover_period,
    })
}

/// The automaton against exact cover of ℤ_n, `n ≤ n_max`, over every set
/// with maximum at most `max`.
pub fn oracle_tile_vs_cover(
    max: u64,
    n_max: u64,
    exec: Execution,
) -> Result<SweepReport<CoverRow>, ZError> {
    let sets = all_sets_up_to(max);
    let rows = exec.map(&sets, |k| cover_row(k, n_max));
    collect("oracle-cover", rows, |r| {
        (r.tile != r.cover_period.is_some()).then(|| Violation {
            set: r.set.clone(),
            reason: "automaton and exact cover disagree".into(),
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewmanRow {
    pub set: ZSet,
    pub newman: bool,
    pub tile: bool,
}

/// The prime-cardinality criterion against the automaton.
pub fn oracle_newman(max: u64, exec: Execution) -> Result<SweepReport<NewmanRow>, ZError> {
    let sets: Vec<ZSet> = all_sets_up_to(max)
        .into_iter()
        .filter(|k| crate::intpoly::is_prime_power(k.len() as u64) == Some(k.len() as u64))
        .collect();
    let rows = exec.map(&sets, |k| {
        Ok(NewmanRow {
            set: k.clone(),
            newman: newman_prime_test(k)?,
            tile: decide_tile_z(k)?.is_tile,
        })
    });
    collect("oracle-newman", rows, |r| {
        (r.newman != r.tile).then(|| Violation {
            set: r.set.clone(),
            reason: "prime-cardinality test and automaton disagree".into(),
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicRow {
    pub set: ZSet,
    pub p_witness: Option<u64>,
    /// Smallest `n` in `(|K|, max(2·max², 2|K|)]` with a singular period-`n`
    /// system.
    pub zn_witness: Option<u64>,
    /// `zn_witness` exceeds `2·max²`, which only happens for `{0, 1}`.
    pub beyond_square_bound: bool,
    /// Period of the integral solution, when one was produced and verified.
    pub integral_period: Option<u64>,
}

pub fn check_periodic_equivalence(k: &ZSet) -> Result<PeriodicRow, ZError> {
    let square = 2 * k.max() * k.max();
    let bound = square.max(2 * k.len() as u64);
    let mut zn_witness = None;
    for n in k.len() as u64 + 1..=bound {
        if is_arithmetic_zn(k, n)? {
            zn_witness = Some(n);
            break;
        }
    }
    let integral_period = integral_periodic_solution(k)?
        .filter(|s| s.verified && s.values.iter().any(|v| !v.is_zero()))
        .map(|s| s.period);
    Ok(PeriodicRow {
        set: k.clone(),
        p_witness: is_p_arithmetic(k)?,
        beyond_square_bound: zn_witness.is_some_and(|n| n > square),
        zn_witness,
        integral_period,
    })
}

/// Periodic solvability three ways: a cyclotomic factor, a singular
/// circulant, and an explicit integral solution.
pub fn sweep_periodic_equivalence(
    sets: &[ZSet],
    exec: Execution,
) -> Result<SweepReport<PeriodicRow>, ZError> {
    let rows = exec.map(sets, check_periodic_equivalence);
    collect("periodic", rows, |r| {
        let p = r.p_witness.is_some();
        (p != r.zn_witness.is_some() || p != r.integral_period.is_some()).then(|| Violation {
            set: r.set.clone(),
            reason: "periodic solvability criteria disagree".into(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_are_clean() {
        let r = sweep_k3(10, Execution::Sequential).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert!(r.rows.iter().any(|row| row.tile));
        let r = sweep_k4(7, Execution::Parallel).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.checked, 35);
    }

    #[test]
    fn modes_agree() {
        let a = sweep_k4(8, Execution::Sequential).unwrap();
        let b = sweep_k4(8, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn families() {
        let r = sweep_prime_family(&[5, 7], Execution::default()).unwrap();
        assert!(r.is_clean());
        assert!(r.rows.iter().all(|row| row.newman == Some(false)));
        let r = sweep_composite_family(&[(2, 2), (3, 2)], Execution::default()).unwrap();
        assert!(r.is_clean());
        assert!(sweep_prime_family(&[4], Execution::default()).is_err());
    }

    #[test]
    fn subsets() {
        let s = all_sets_up_to(3);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0].elements(), &[0]);
        assert_eq!(s[7].elements(), &[0, 1, 2, 3]);
    }

    #[test]
    fn small_oracles() {
        assert!(oracle_tile_vs_cover(6, 30, Execution::default()).unwrap().is_clean());
        assert!(oracle_newman(8, Execution::default()).unwrap().is_clean());
        let sets: Vec<ZSet> = [&[0, 1, 2][..], &[0, 1, 3], &[0, 3, 5, 7, 9], &[0, 1, 3, 5, 6]]
            .iter()
            .map(|raw| normalize_set(raw).unwrap())
            .collect();
        let r = sweep_periodic_equivalence(&sets, Execution::default()).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.rows[0].zn_witness, Some(6));
        assert_eq!(r.rows[1].p_witness, None);
        let r = check_periodic_equivalence(&normalize_set(&[0, 1]).unwrap()).unwrap();
        assert_eq!((r.zn_witness, r.beyond_square_bound), (Some(4), true));
    }
}
