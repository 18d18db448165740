use std::collections::HashSet;

use serde::Serialize;

use super::{ball_words, FGSet, Word};

pub const DEFAULT_COVER_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "shifts", rename_all = "snake_case")]
pub enum CoverOutcome {
    /// Pairwise disjoint translates `h·T` covering the ball.
    Sat(Vec<Word>),
    /// No such family exists.
    Unsat,
    /// Budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub outcome: CoverOutcome,
    pub nodes: u64,
    pub budget: u64,
}

struct Search<'a> {
    t: &'a FGSet,
    inverses: Vec<Word>,
    ball: Vec<Word>,
    covered: HashSet<Word>,
    shifts: Vec<Word>,
    nodes: u64,
    budget: u64,
}

enum Found {
    Yes,
    No,
    OutOfBudget,
}

impl Search<'_> {
    /// Branch on the translates through the shortlex-least uncovered word of
    /// the ball, starting the scan at `from`.
    fn run(&mut self, from: usize) -> Found {
        let Some(pos) = (from..self.ball.len()).find(|&i| !self.covered.contains(&self.ball[i]))
        else {
            return Found::Yes;
        };
        let z = self.ball[pos].clone();
        for i in 0..self.inverses.len() {
            if self.nodes >= self.budget {
                return Found::OutOfBudget;
            }
            self.nodes += 1;
            let h = z.mul_unchecked(&self.inverses[i]);
            let translate = self.t.left_translate(&h);
            if translate.iter().any(|x| self.covered.contains(x)) {
                continue;
            }
            self.covered.extend(translate.iter().cloned());
            self.shifts.push(h);
            if self.all_coverable(pos + 1) {
                match self.run(pos + 1) {
                    Found::No => {}
                    other => return other,
                }
            }
            self.shifts.pop();
            for x in &translate {
                self.covered.remove(x);
            }
        }
        Found::No
    }

    /// Every uncovered word of the ball still has some free translate through
    /// it.
    fn all_coverable(&self, from: usize) -> bool {
        self.ball[from..]
            .iter()
            .filter(|z| !self.covered.contains(*z))
            .all(|z| {
                self.inverses.iter().any(|w_inv| {
                    let h = z.mul_unchecked(w_inv);
                    self.t.iter().all(|s| !self.covered.contains(&h.mul_unchecked(s)))
                })
            })
    }
}

/// Searches for disjoint left translates of `T` covering `B_radius`,
/// spending at most `budget` placement attempts.
pub fn cover_search(t: &FGSet, radius: usize, budget: u64) -> CoverResult {
    let ball = ball_words(t.rank(), radius).unwrap_or_default();
    if t.is_empty() {
        let outcome = if ball.is_empty() {
            CoverOutcome::Sat(Vec::new())
        } else {
            CoverOutcome::Unsat
        };
        return CoverResult {
            outcome,
            nodes: 0,
            budget,
        };
    }
    let mut search = Search {
        t,
        inverses: t.iter().map(Word::inverse).collect(),
        ball,
        covered: HashSet::new(),
        shifts: Vec::new(),
        nodes: 0,
        budget,
    };
    let outcome = match search.run(0) {
        Found::Yes => CoverOutcome::Sat(search.shifts.clone()),
        Found::No => CoverOutcome::Unsat,
        Found::OutOfBudget => CoverOutcome::Unknown,
    };
    CoverResult {
        outcome,
        nodes: search.nodes,
        budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disjoint_cover(t: &FGSet, shifts: &[Word], radius: usize) -> bool {
        let mut seen = HashSet::new();
        for h in shifts {
            for x in t.left_translate(h) {
                if !seen.insert(x) {
                    return false;
                }
            }
        }
        ball_words(t.rank(), radius).unwrap().iter().all(|w| seen.contains(w))
    }

    #[test]
    fn sphere_one_covers() {
        let t = FGSet::sphere(2, 1).unwrap();
        let r = cover_search(&t, 2, DEFAULT_COVER_BUDGET);
        let CoverOutcome::Sat(shifts) = r.outcome else {
            panic!("{r:?}")
        };
        assert!(disjoint_cover(&t, &shifts, 2));
    }

    #[test]
    fn ball_one_covers() {
        let t = FGSet::ball(2, 1).unwrap();
        let r = cover_search(&t, 2, DEFAULT_COVER_BUDGET);
        let CoverOutcome::Sat(shifts) = r.outcome else {
            panic!("{r:?}")
        };
        assert!(disjoint_cover(&t, &shifts, 2));
    }

    #[test]
    fn rank_one_sets() {
        let t = FGSet::parse(1, "1,aa").unwrap();
        let CoverOutcome::Sat(shifts) = cover_search(&t, 2, DEFAULT_COVER_BUDGET).outcome else {
            panic!()
        };
        assert!(disjoint_cover(&t, &shifts, 2));
    }

    #[test]
    fn finite_obstructions() {
        let cases = [
            (FGSet::parse(1, "1,a,aaa").unwrap(), 2),
            (FGSet::sphere(2, 2).unwrap(), 2),
            (FGSet::ball_minus_identity(2, 2).unwrap(), 2),
        ];
        for (t, r) in cases {
            assert_eq!(cover_search(&t, r, DEFAULT_COVER_BUDGET).outcome, CoverOutcome::Unsat, "{t}");
        }
        assert!(matches!(
            cover_search(&FGSet::parse(1, "1,a,aaa").unwrap(), 1, 100).outcome,
            CoverOutcome::Sat(_)
        ));
    }

    #[test]
    fn budget_and_determinism() {
        let t = FGSet::sphere(2, 2).unwrap();
        let r = cover_search(&t, 2, 3);
        assert_eq!(r.outcome, CoverOutcome::Unknown);
        assert_eq!(r.nodes, 3);
        let a = cover_search(&t, 2, 20_000);
        let b = cover_search(&t, 2, 20_000);
        assert_eq!(a, b);
    }
}
