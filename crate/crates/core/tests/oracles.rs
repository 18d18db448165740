//! Independent brute-force checks of the search and classification routines.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use tilearith::freegrp::{ball_words, cover_search, CoverOutcome, FGSet, Word};
use tilearith::sweep::all_sets_up_to;
use tilearith::zarith::{
    classify_boundedness, extend_recurrence, integral_periodic_solution, is_p_arithmetic,
    BoundednessVerdict, ZSet, DEFAULT_BOUNDEDNESS_TOL,
};

/// Every subset of the candidate translates, no pruning and no ordering.
fn naive_cover_exists(t: &FGSet, radius: usize) -> bool {
    let ball: Vec<Word> = ball_words(t.rank(), radius).unwrap();
    let ball_set: HashSet<&Word> = ball.iter().collect();
    let mut candidates: Vec<Vec<Word>> = Vec::new();
    let mut seen_shifts = HashSet::new();
    for z in &ball {
        for s in t.iter() {
            let h = z.mul(&s.inverse()).unwrap();
            if seen_shifts.insert(h.clone()) {
                candidates.push(t.left_translate(&h));
            }
        }
    }
    assert!(candidates.len() <= 22, "too many candidates for brute force");
    (0u32..1 << candidates.len()).any(|mask| {
        let mut covered: HashSet<&Word> = HashSet::new();
        for (i, c) in candidates.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for x in c {
                    if !covered.insert(x) {
                        return false;
                    }
                }
            }
        }
        ball_set.iter().all(|w| covered.contains(*w))
    })
}

#[test]
fn cover_search_matches_brute_force() {
    let mut cases: Vec<(FGSet, usize)> = Vec::new();
    for raw in ["1,a", "1,aa", "1,a,aaa", "1,aa,aaa", "1,a,aaaa", "A,a", "1,aaa,aaaaa"] {
        for r in 1..=3 {
            cases.push((FGSet::parse(1, raw).unwrap(), r));
        }
    }
    for raw in ["1,a", "a,b", "1,ab", "a,A", "1,a,b", "a,A,b", "1,aa", "ab,Ab"] {
        cases.push((FGSet::parse(2, raw).unwrap(), 1));
    }
    for (t, r) in cases {
        let fast = cover_search(&t, r, 1_000_000);
        let expected = naive_cover_exists(&t, r);
        match fast.outcome {
            CoverOutcome::Sat(ref shifts) => {
                assert!(expected, "{t} R={r}");
                let mut seen = HashSet::new();
                for h in shifts {
                    for x in t.left_translate(h) {
                        assert!(seen.insert(x), "{t}: overlapping translates");
                    }
                }
            }
            CoverOutcome::Unsat => assert!(!expected, "{t} R={r}"),
            CoverOutcome::Unknown => panic!("budget exhausted on {t}"),
        }
    }
}

fn sup_on_window(k: &ZSet, init: &[BigRational], lo: i64, hi: i64) -> f64 {
    extend_recurrence(k, init, lo, hi)
        .unwrap()
        .values
        .iter()
        .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Bounded verdicts stay small on a long window; unbounded ones grow.
#[test]
fn boundedness_matches_growth() {
    let inits: [&[i64]; 4] = [&[1, 0, 0, 0, 0, 0], &[1, 1, 1, 1, 1, 1], &[1, -1, 0, 2, -1, 1], &[0, 0, 0, 0, 0, 1]];
    let mut seen = [0usize; 3];
    for k in all_sets_up_to(6).into_iter().filter(|k| k.len() >= 2 && k.generates()) {
        let d = k.max() as usize;
        for raw in inits {
            let init: Vec<BigRational> =
                raw[..d].iter().map(|&x| BigRational::from_integer(x.into())).collect();
            let r = classify_boundedness(&k, &init, DEFAULT_BOUNDEDNESS_TOL).unwrap();
            let near = sup_on_window(&k, &init, -40, 40);
            let far = sup_on_window(&k, &init, -400, 400);
            match r.verdict {
                BoundednessVerdict::Bounded => {
                    seen[0] += 1;
                    assert!(far <= near.max(1.0) * 20.0, "{k} {raw:?}: {near} -> {far}");
                }
                BoundednessVerdict::Unbounded => {
                    seen[1] += 1;
                    assert!(far > 4.0 * near, "{k} {raw:?}: {near} -> {far}");
                }
                BoundednessVerdict::Inconclusive => seen[2] += 1,
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

/// The integral solution exists exactly for p-arithmetic sets and is a
/// primitive vector.
#[test]
fn integral_solutions_are_primitive() {
    use num_integer::Integer;
    for k in all_sets_up_to(8).into_iter().filter(|k| k.len() >= 2 && k.generates()) {
        let sol = integral_periodic_solution(&k).unwrap();
        assert_eq!(sol.is_some(), is_p_arithmetic(&k).unwrap().is_some(), "{k}");
        if let Some(s) = sol {
            assert!(s.verified, "{k}");
            let g = s.values.iter().fold(num_bigint::BigInt::from(0), |a, b| a.gcd(b));
            assert_eq!(g, 1.into(), "{k}");
            assert!(s.period > k.len() as u64);
            let first = s.values.iter().find(|v| !num_traits::Zero::is_zero(*v)).unwrap();
            assert!(first.is_positive(), "{k}");
        }
    }
}
