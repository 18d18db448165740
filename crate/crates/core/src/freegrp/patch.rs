use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{ball_words, sphere_words, FGSet, FgError, Word};
use crate::exec::Execution;
use crate::rational::{self, RationalRepr};

/// Exact values on the ball `B_radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPatch {
    pub rank: usize,
    pub radius: usize,
    pub values: BTreeMap<Word, BigRational>,
}

impl SolutionPatch {
    pub fn get(&self, w: &Word) -> Option<&BigRational> {
        self.values.get(w)
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values
            .values()
            .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl Serialize for SolutionPatch {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values: BTreeMap<&Word, RationalRepr> =
            self.values.iter().map(|(w, v)| (w, RationalRepr::from(v))).collect();
        let mut st = s.serialize_struct("SolutionPatch", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Every `g` whose cells `K·g` lie in `B_radius`, in shortlex order.
pub(crate) fn equations_in_ball(k: &FGSet, radius: usize) -> Result<Vec<Word>, FgError> {
    Ok(ball_words(k.rank(), radius + k.max_norm())?
        .into_iter()
        .filter(|g| k.iter().all(|s| s.mul_unchecked(g).norm() <= radius))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationFailure {
    pub equation: Word,
    /// `None` when a cell has no value.
    #[serde(serialize_with = "rational::serialize_opt")]
    pub sum: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatchReport {
    pub ok: bool,
    pub equations_checked: usize,
    /// Words of the ball without a value.
    pub missing_cells: usize,
    /// All values zero: the trivial solution.
    pub degenerate: bool,
    pub max_abs_value: f64,
    pub first_failure: Option<EquationFailure>,
}

/// Checks every equation supported in the patch's ball, exactly.
pub fn verify_solution_patch(k: &FGSet, patch: &SolutionPatch) -> PatchReport {
    verify_solution_patch_with(k, patch, Execution::default())
}

pub fn verify_solution_patch_with(
    k: &FGSet,
    patch: &SolutionPatch,
    exec: Execution,
) -> PatchReport {
    let ball = ball_words(k.rank(), patch.radius).unwrap_or_default();
    let missing_cells = ball.iter().filter(|w| !patch.values.contains_key(*w)).count();
    let equations = equations_in_ball(k, patch.radius).unwrap_or_default();
    let sum_at = |g: &Word| -> Option<BigRational> {
        k.iter()
            .map(|s| patch.values.get(&s.mul_unchecked(g)))
            .try_fold(BigRational::zero(), |acc, v| v.map(|v| acc + v))
    };
    let bad = exec.position(&equations, |g| sum_at(g).is_none_or(|s| !s.is_zero()));
    let first_failure = bad.map(|i| EquationFailure {
        equation: equations[i].clone(),
        sum: sum_at(&equations[i]),
    });
    PatchReport {
        ok: missing_cells == 0 && first_failure.is_none(),
        equations_checked: equations.len(),
        missing_cells,
        degenerate: patch.values.values().all(Zero::is_zero),
        max_abs_value: patch.max_abs_value(),
        first_failure,
    }
}

/// One step of the bounded construction: the equation at `equation` got its
/// unassigned cells filled, `designated` with `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctnessEntry {
    pub step: usize,
    pub equation: Word,
    pub designated: Word,
    #[serde(serialize_with = "rational::serialize")]
    pub value: BigRational,
    pub fresh_cells: usize,
    /// `value` differs from every value assigned at earlier steps.
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedPatch {
    pub patch: SolutionPatch,
    pub log: Vec<DistinctnessEntry>,
    pub all_distinct: bool,
    pub max_abs_value: f64,
}

fn check_bounded_hypotheses(k: &FGSet) -> Result<(), FgError> {
    let one = Word::identity(k.rank())?;
    if k.contains(&one) {
        return Err(FgError::HypothesesViolated("K contains the identity".into()));
    }
    if let Some(w) = ball_words(k.rank(), 2)?.into_iter().skip(1).find(|w| !k.contains(w)) {
        return Err(FgError::HypothesesViolated(format!("{w} ∈ B_2 is missing from K")));
    }
    let with_one = FGSet::new(k.rank(), k.iter().cloned().chain([one]))?;
    if !with_one.is_connected() {
        return Err(FgError::HypothesesViolated("{1} ∪ K is not connected".into()));
    }
    Ok(())
}

/// Walks the equations at `g ∈ B_radius` in shortlex order. Each one fills its
/// unassigned cells: the shortlex-largest gets `1/(n+3)` at step `n`, or a
/// smaller unit fraction if that value was already used, and the rest share
/// what is left so the equation sums to zero.
pub fn bounded_nonperiodic_solution(k: &FGSet, radius: usize) -> Result<BoundedPatch, FgError> {
    check_bounded_hypotheses(k)?;
    let mut values: HashMap<Word, BigRational> = HashMap::new();
    let mut used: BTreeSet<BigRational> = BTreeSet::new();
    let mut log = Vec::new();

    for (n, g) in ball_words(k.rank(), radius)?.into_iter().enumerate() {
        let cells = k.right_translate(&g);
        let mut fresh: Vec<Word> = Vec::new();
        let mut sum = BigRational::zero();
        for c in cells {
            match values.get(&c) {
                Some(v) => sum += v,
                None => fresh.push(c),
            }
        }
        fresh.sort();
        let Some(designated) = fresh.pop() else {
            if sum.is_zero() {
                continue;
            }
            return Err(FgError::NoFreshCell(g.to_string()));
        };

        let value = if fresh.is_empty() {
            -sum.clone()
        } else {
            let base = BigRational::from_integer((n as i64 + 3).into());
            let mut t = 1i64;
            let mut v = base.recip();
            while used.contains(&v) {
                t += 1;
                v = (&base * BigRational::from_integer(t.into())).recip();
            }
            v
        };
        let distinct = !used.contains(&value);
        if !fresh.is_empty() {
            let share = -(&sum + &value) / BigRational::from_integer((fresh.len() as i64).into());
            for c in fresh.iter() {
                values.insert(c.clone(), share.clone());
            }
            used.insert(share);
        }
        values.insert(designated.clone(), value.clone());
        used.insert(value.clone());
        log.push(DistinctnessEntry {
            step: n,
            equation: g,
            designated,
            value,
            fresh_cells: fresh.len() + 1,
            distinct,
        });
    }

    let patch = SolutionPatch {
        rank: k.rank(),
        radius,
        values: ball_words(k.rank(), radius)?
            .into_iter()
            .map(|w| {
                let v = values.get(&w).cloned().unwrap_or_else(BigRational::zero);
                (w, v)
            })
            .collect(),
    };
    let all_distinct = log.iter().all(|e| e.distinct);
    let max_abs_value = patch.max_abs_value();
    Ok(BoundedPatch {
        patch,
        log,
        all_distinct,
        max_abs_value,
    })
}

/// `x_g = 1` for odd `|g|`, `−1` for even `|g|`.
pub fn parity_solution(rank: usize, radius: usize) -> Result<SolutionPatch, FgError> {
    let values = ball_words(rank, radius)?
        .into_iter()
        .map(|w| {
            let v = if w.norm() % 2 == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            (w, v)
        })
        .collect();
    Ok(SolutionPatch {
        rank,
        radius,
        values,
    })
}

/// Equally many odd-norm and even-norm elements; exactly when the parity
/// patch solves `A(K)`, since `|s·g| ≡ |s| + |g| (mod 2)`.
pub fn check_parity_balance(k: &FGSet) -> bool {
    let (odd, even) = k.count_by_parity();
    odd == even
}

/// `B_2 \ {1}` in rank 2 together with the first eight words of `S_3`: 24
/// elements, 12 of each parity.
pub fn parity_example_set() -> FGSet {
    let words = ball_words(2, 2)
        .and_then(|b| Ok(b.into_iter().skip(1).chain(sphere_words(2, 3)?.into_iter().take(8))))
        .expect("rank 2 is valid");
    FGSet::new(2, words).expect("distinct words")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_patch_is_degenerate() {
        let k = FGSet::ball(2, 1).unwrap();
        let patch = SolutionPatch {
            rank: 2,
            radius: 2,
            values: ball_words(2, 2).unwrap().into_iter().map(|w| (w, BigRational::zero())).collect(),
        };
        let rep = verify_solution_patch(&k, &patch);
        assert!(rep.ok && rep.degenerate);
        assert_eq!(rep.equations_checked, 5);
    }

    #[test]
    fn parity() {
        let k = parity_example_set();
        assert_eq!(k.len(), 24);
        assert_eq!(k.count_by_parity(), (12, 12));
        assert!(check_parity_balance(&k));
        let p = parity_solution(2, 5).unwrap();
        let rep = verify_solution_patch(&k, &p);
        assert!(rep.ok && rep.equations_checked > 0);

        let b1 = FGSet::ball(2, 1).unwrap();
        assert!(!check_parity_balance(&b1));
        assert!(!verify_solution_patch(&b1, &p).ok);

        let k = FGSet::parse(2, "a,A,ab,AB").unwrap();
        assert!(check_parity_balance(&k));
        assert!(verify_solution_patch(&k, &p).ok);
    }

    #[test]
    fn perturbation_is_located() {
        let k = parity_example_set();
        let mut p = parity_solution(2, 5).unwrap();
        let target = Word::parse(2, "abab").unwrap();
        *p.values.get_mut(&target).unwrap() += BigRational::one();
        let rep = verify_solution_patch(&k, &p);
        let fail = rep.first_failure.unwrap();
        assert!(k.right_translate(&fail.equation).contains(&target));
        assert_eq!(fail.sum, Some(BigRational::one()));
    }

    #[test]
    fn bounded_construction() {
        let k = FGSet::ball_minus_identity(2, 2).unwrap();
        let b = bounded_nonperiodic_solution(&k, 5).unwrap();
        let rep = verify_solution_patch(&k, &b.patch);
        assert!(rep.ok && !rep.degenerate, "{rep:?}");
        assert!(b.all_distinct);
        assert!(b.max_abs_value < 1.0);
        // two cells of one norm with different values
        let s2: Vec<_> = sphere_words(2, 2).unwrap();
        let vals: BTreeSet<_> = s2.iter().map(|w| b.patch.get(w).unwrap().clone()).collect();
        assert!(vals.len() >= 2);

        let k = FGSet::ball_minus_identity(2, 3).unwrap();
        let b = bounded_nonperiodic_solution(&k, 4).unwrap();
        assert!(verify_solution_patch(&k, &b.patch).ok);
        assert!(b.all_distinct);
    }

    #[test]
    fn bounded_hypotheses() {
        assert!(matches!(
            bounded_nonperiodic_solution(&FGSet::ball(2, 2).unwrap(), 3),
            Err(FgError::HypothesesViolated(_))
        ));
        assert!(matches!(
            bounded_nonperiodic_solution(&FGSet::ball_minus_identity(2, 1).unwrap(), 3),
            Err(FgError::HypothesesViolated(_))
        ));
        assert!(bounded_nonperiodic_solution(&parity_example_set(), 3).is_ok());
    }

    #[test]
    fn json_keys_are_words() {
        let p = parity_solution(2, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&p).unwrap();
        assert_eq!(v["values"]["A"]["num"], "1");
        assert_eq!(v["values"]["1"]["num"], "-1");
    }
}
