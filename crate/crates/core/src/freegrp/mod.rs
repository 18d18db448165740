//! Finite subsets of free groups: Cayley balls, tilings, and solution patches
//! of `A(K)`, the system `Σ_{s ∈ K} x_{s·g} = 0` indexed by group elements
//! `g`.

mod cover;
mod patch;
mod tiling;
mod word;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

pub use cover::{cover_search, CoverOutcome, CoverResult, DEFAULT_COVER_BUDGET};
pub use patch::{
    bounded_nonperiodic_solution, check_parity_balance, parity_example_set, parity_solution,
    verify_solution_patch, verify_solution_patch_with, BoundedPatch, DistinctnessEntry, EquationFailure, PatchReport,
    SolutionPatch,
};
pub use tiling::{
    greedy_tiling, tiling_to_solution_fg, verify_partial_tiling, PartialTiling, TilingReport,
    TilingViolation,
};
pub use word::{ball_words, sphere_words, Word, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FgError {
    #[error("rank must be between 1 and {MAX_RANK}, got {0}")]
    BadRank(usize),
    #[error("ranks differ: {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("empty set")]
    Empty,
    #[error("duplicate element {0}")]
    Duplicate(String),
    #[error("set is not connected in the Cayley graph")]
    NotConnected,
    #[error("no translate through {0} avoids the current union")]
    NoValidShift(String),
    #[error("tiling does not cover {0}, needed by an equation in the window")]
    InsufficientCoverage(String),
    #[error("a single-element tile gives only the zero solution")]
    DegenerateTile,
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("equation at {0} has no unassigned cell")]
    NoFreshCell(String),
}

/// A finite set of words of one rank, kept in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGSet {
    rank: usize,
    elements: BTreeSet<Word>,
}

impl FGSet {
    pub fn new(rank: usize, words: impl IntoIterator<Item = Word>) -> Result<FGSet, FgError> {
        Word::identity(rank)?;
        let mut elements = BTreeSet::new();
        for w in words {
            if w.rank() != rank {
                return Err(FgError::RankMismatch(rank, w.rank()));
            }
            let name = w.to_string();
            if !elements.insert(w) {
                return Err(FgError::Duplicate(name));
            }
        }
        Ok(FGSet { rank, elements })
    }

    /// Comma-separated words, e.g. `"1,a,A,b,B"`.
    pub fn parse(rank: usize, s: &str) -> Result<FGSet, FgError> {
        let words = s
            .split(',')
            .map(|t| Word::parse(rank, t))
            .collect::<Result<Vec<_>, _>>()?;
        FGSet::new(rank, words)
    }

    pub fn ball(rank: usize, r: usize) -> Result<FGSet, FgError> {
        FGSet::new(rank, ball_words(rank, r)?)
    }

    pub fn sphere(rank: usize, r: usize) -> Result<FGSet, FgError> {
        FGSet::new(rank, sphere_words(rank, r)?)
    }

    /// `B_r \ {1}`.
    pub fn ball_minus_identity(rank: usize, r: usize) -> Result<FGSet, FgError> {
        FGSet::new(rank, ball_words(rank, r)?.into_iter().skip(1))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.elements.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter()
    }

    pub fn max_norm(&self) -> usize {
        self.elements.iter().map(Word::norm).max().unwrap_or(0)
    }

    /// `h·K`
    pub fn left_translate(&self, h: &Word) -> Vec<Word> {
        self.elements.iter().map(|s| h.mul_unchecked(s)).collect()
    }

    /// `K·g`, the cells of the equation at `g`.
    pub fn right_translate(&self, g: &Word) -> Vec<Word> {
        self.elements.iter().map(|s| s.mul_unchecked(g)).collect()
    }

    /// Whether the induced subgraph of the Cayley graph is connected.
    pub fn is_connected(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return true;
        };
        let mut seen: HashSet<&Word> = HashSet::from([first]);
        let mut stack = vec![first.clone()];
        while let Some(w) = stack.pop() {
            for n in w.neighbours() {
                if let Some(e) = self.elements.get(&n) {
                    if seen.insert(e) {
                        stack.push(n);
                    }
                }
            }
        }
        seen.len() == self.elements.len()
    }

    /// The translate `s⁻¹K` containing the identity, for the shortlex-least
    /// `s ∈ K`.
    pub fn normalized(&self) -> Result<FGSet, FgError> {
        let first = self.elements.first().ok_or(FgError::Empty)?;
        if first.is_identity() {
            return Ok(self.clone());
        }
        FGSet::new(self.rank, self.left_translate(&first.inverse()))
    }

    pub fn count_by_parity(&self) -> (usize, usize) {
        let odd = self.elements.iter().filter(|w| w.norm() % 2 == 1).count();
        (odd, self.elements.len() - odd)
    }
}

impl fmt::Display for FGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Serialize for FGSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FGSet", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("elements", &self.elements)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balls_and_spheres() {
        let b1 = FGSet::ball(2, 1).unwrap();
        assert_eq!(b1.to_string(), "1,a,A,b,B");
        assert_eq!(FGSet::ball(2, 2).unwrap().len(), 17);
        assert_eq!(FGSet::sphere(2, 2).unwrap().len(), 12);
        assert_eq!(FGSet::ball(1, 5).unwrap().len(), 11);
        assert_eq!(FGSet::ball_minus_identity(2, 2).unwrap().len(), 16);
    }

    #[test]
    fn connectivity() {
        assert!(FGSet::ball(2, 2).unwrap().is_connected());
        assert!(!FGSet::parse(2, "a,b").unwrap().is_connected());
        assert!(FGSet::parse(2, "1,a,ab").unwrap().is_connected());
        assert!(!FGSet::sphere(2, 1).unwrap().is_connected());
        assert!(!FGSet::ball_minus_identity(2, 2).unwrap().is_connected());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FGSet::parse(2, "a,a"), Err(FgError::Duplicate("a".into())));
        assert_eq!(FGSet::parse(2, "a,aAa").unwrap_err(), FgError::Duplicate("a".into()));
        assert!(FGSet::parse(1, "a,b").is_err());
    }

    #[test]
    fn normalization() {
        let k = FGSet::parse(2, "a,ab").unwrap().normalized().unwrap();
        assert_eq!(k.to_string(), "1,b");
        assert_eq!(FGSet::parse(2, "ab,b").unwrap().normalized().unwrap().to_string(), "1,Bab");
    }
}
