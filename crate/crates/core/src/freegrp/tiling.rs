use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use serde::Serialize;

use super::patch::{equations_in_ball, SolutionPatch};
use super::{ball_words, FGSet, FgError, Word};

/// Left translates `g_1 K, g_2 K, …` in the order they were placed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialTiling {
    pub base: FGSet,
    pub shifts: Vec<Word>,
    /// The ball `B_radius` is covered.
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TilingViolation {
    RankMismatch { index: usize },
    Overlap { first: usize, second: usize, element: Word },
    NotAdjacent { index: usize },
    Uncovered { element: Word },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingReport {
    pub ok: bool,
    pub translates: usize,
    pub covered: usize,
    pub ball_size: usize,
    pub violation: Option<TilingViolation>,
}

/// Checks that the translates are pairwise disjoint, that each one after the
/// first touches the union of the earlier ones, and that together they cover
/// `B_radius`. Stops at the first violation.
pub fn verify_partial_tiling(k: &FGSet, shifts: &[Word], radius: usize) -> TilingReport {
    let ball = ball_words(k.rank(), radius).unwrap_or_default();
    let mut owner: HashMap<Word, usize> = HashMap::new();
    let fail = |v, owner: &HashMap<Word, usize>, i| TilingReport {
        ok: false,
        translates: i,
        covered: owner.len(),
        ball_size: ball.len(),
        violation: Some(v),
    };
    for (i, h) in shifts.iter().enumerate() {
        if h.rank() != k.rank() {
            return fail(TilingViolation::RankMismatch { index: i }, &owner, i);
        }
        let translate = k.left_translate(h);
        if let Some(x) = translate.iter().find(|x| owner.contains_key(*x)) {
            let v = TilingViolation::Overlap {
                first: owner[x],
                second: i,
                element: x.clone(),
            };
            return fail(v, &owner, i);
        }
        if i > 0
            && !translate
                .iter()
                .any(|x| x.neighbours().any(|n| owner.contains_key(&n)))
        {
            return fail(TilingViolation::NotAdjacent { index: i }, &owner, i);
        }
        owner.extend(translate.into_iter().map(|x| (x, i)));
    }
    if let Some(y) = ball.iter().find(|y| !owner.contains_key(*y)) {
        let v = TilingViolation::Uncovered { element: y.clone() };
        return fail(v, &owner, shifts.len());
    }
    TilingReport {
        ok: true,
        translates: shifts.len(),
        covered: owner.len(),
        ball_size: ball.len(),
        violation: None,
    }
}

/// Grows disjoint translates of a connected `K` until `B_radius` is covered,
/// always covering the shortlex-least uncovered word `z` next with the first
/// `w ∈ K` whose shift `z·w⁻¹` keeps the translates disjoint.
///
/// `K` is first moved to contain the identity, so the base of the result may
/// be a left translate of the input.
pub fn greedy_tiling(k: &FGSet, radius: usize) -> Result<PartialTiling, FgError> {
    if k.is_empty() {
        return Err(FgError::Empty);
    }
    if !k.is_connected() {
        return Err(FgError::NotConnected);
    }
    let base = k.normalized()?;
    let identity = Word::identity(base.rank())?;
    let mut union: HashSet<Word> = base.iter().cloned().collect();
    let mut shifts = vec![identity];
    let inverses: Vec<Word> = base.iter().map(Word::inverse).collect();

    for z in ball_words(base.rank(), radius)? {
        if union.contains(&z) {
            continue;
        }
        let translate = inverses
            .iter()
            .map(|w_inv| z.mul_unchecked(w_inv))
            .map(|h| (base.left_translate(&h), h))
            .find(|(t, _)| t.iter().all(|x| !union.contains(x)));
        let Some((t, h)) = translate else {
            return Err(FgError::NoValidShift(z.to_string()));
        };
        union.extend(t);
        shifts.push(h);
    }

    let report = verify_partial_tiling(&base, &shifts, radius);
    if !report.ok {
        return Err(FgError::NoValidShift(format!("{:?}", report.violation)));
    }
    Ok(PartialTiling {
        base,
        shifts,
        radius,
    })
}

/// The two-valued solution `x_y = |K| − 1` if `y⁻¹` is a shift and `−1`
/// otherwise, on the ball `B_radius`.
///
/// The equation at `g` sums to zero as soon as `g⁻¹` is covered by the
/// tiling; every equation supported in the ball must meet that.
pub fn tiling_to_solution_fg(
    k: &FGSet,
    tiling: &PartialTiling,
    radius: usize,
) -> Result<SolutionPatch, FgError> {
    if k.len() <= 1 {
        return Err(FgError::DegenerateTile);
    }
    let shifts: HashSet<Word> = if *k == tiling.base {
        tiling.shifts.iter().cloned().collect()
    } else if k.normalized()? == tiling.base {
        // K = t·base with t the least element of K
        let t_inv = k.iter().next().expect("nonempty").inverse();
        tiling.shifts.iter().map(|h| h.mul_unchecked(&t_inv)).collect()
    } else {
        return Err(FgError::HypothesesViolated(
            "tiling is not a tiling by translates of this set".into(),
        ));
    };
    let covered: HashSet<Word> = shifts.iter().flat_map(|h| k.left_translate(h)).collect();
    for g in equations_in_ball(k, radius)? {
        let g_inv = g.inverse();
        if !covered.contains(&g_inv) {
            return Err(FgError::InsufficientCoverage(g_inv.to_string()));
        }
    }
    let high = BigRational::from_integer((k.len() as i64 - 1).into());
    let low = BigRational::from_integer((-1).into());
    let values = ball_words(k.rank(), radius)?
        .into_iter()
        .map(|y| {
            let v = if shifts.contains(&y.inverse()) {
                high.clone()
            } else {
                low.clone()
            };
            (y, v)
        })
        .collect();
    Ok(SolutionPatch {
        rank: k.rank(),
        radius,
        values,
    })
}
