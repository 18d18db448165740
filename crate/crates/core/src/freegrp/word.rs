use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::FgError;

pub const MAX_RANK: usize = 26;

/// A freely reduced word in the free group of rank `rank`.
///
/// Letters are stored as codes `2i` (generator `i`, 0-based) and `2i + 1`
/// (its inverse), so comparing code sequences gives the shortlex order
/// `a < A < b < B < …` once lengths agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u8,
    codes: Vec<u8>,
}

#[inline]
fn inverse_code(c: u8) -> u8 {
    c ^ 1
}

fn check_rank(rank: usize) -> Result<(), FgError> {
    if rank == 0 || rank > MAX_RANK {
        Err(FgError::BadRank(rank))
    } else {
        Ok(())
    }
}

impl Word {
    pub fn identity(rank: usize) -> Result<Word, FgError> {
        check_rank(rank)?;
        Ok(Word {
            rank: rank as u8,
            codes: Vec::new(),
        })
    }

    /// `(generator, sign)` pairs with generators numbered from 1. The input
    /// is freely reduced.
    pub fn from_letters(rank: usize, letters: &[(usize, i8)]) -> Result<Word, FgError> {
        let mut w = Word::identity(rank)?;
        for &(g, sign) in letters {
            if g == 0 || g > rank || (sign != 1 && sign != -1) {
                return Err(FgError::Parse(format!("bad letter ({g}, {sign})")));
            }
            w.push_code((2 * (g - 1)) as u8 + u8::from(sign < 0));
        }
        Ok(w)
    }

    /// Lowercase letters are generators, uppercase their inverses; `""` and
    /// `"1"` are the identity.
    pub fn parse(rank: usize, s: &str) -> Result<Word, FgError> {
        let mut w = Word::identity(rank)?;
        let s = s.trim();
        if s == "1" {
            return Ok(w);
        }
        for ch in s.chars() {
            let code = match ch {
                'a'..='z' => 2 * (ch as u8 - b'a'),
                'A'..='Z' => 2 * (ch as u8 - b'A') + 1,
                _ => return Err(FgError::Parse(format!("unexpected character {ch:?} in {s:?}"))),
            };
            if (code / 2) as usize >= rank {
                return Err(FgError::Parse(format!(
                    "letter {ch:?} needs rank > {rank}"
                )));
            }
            w.push_code(code);
        }
        Ok(w)
    }

    fn push_code(&mut self, c: u8) {
        if self.codes.last() == Some(&inverse_code(c)) {
            self.codes.pop();
        } else {
            self.codes.push(c);
        }
    }

    /// The `2·rank` words of length one, in shortlex order.
    pub fn generators(rank: usize) -> Result<Vec<Word>, FgError> {
        check_rank(rank)?;
        Ok((0..2 * rank as u8)
            .map(|c| Word {
                rank: rank as u8,
                codes: vec![c],
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn norm(&self) -> usize {
        self.codes.len()
    }

    pub fn is_identity(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.codes
            .iter()
            .map(|&c| ((c / 2) as usize + 1, if c % 2 == 0 { 1 } else { -1 }))
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            codes: self.codes.iter().rev().map(|&c| inverse_code(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Result<Word, FgError> {
        if self.rank != other.rank {
            return Err(FgError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut cancel = 0;
        while cancel < self.codes.len().min(other.codes.len())
            && self.codes[self.codes.len() - 1 - cancel] == inverse_code(other.codes[cancel])
        {
            cancel += 1;
        }
        let mut codes = Vec::with_capacity(self.codes.len() + other.codes.len() - 2 * cancel);
        codes.extend_from_slice(&self.codes[..self.codes.len() - cancel]);
        codes.extend_from_slice(&other.codes[cancel..]);
        Word {
            rank: self.rank,
            codes,
        }
    }

    /// Cayley distance `|u⁻¹v|`.
    pub fn distance(&self, other: &Word) -> usize {
        self.inverse().mul_unchecked(other).norm()
    }

    /// Right neighbours `w·s` over all letters `s`.
    pub(crate) fn neighbours(&self) -> impl Iterator<Item = Word> + '_ {
        (0..2 * self.rank).map(move |c| {
            let mut w = self.clone();
            w.push_code(c);
            w
        })
    }

    /// Extensions by one letter without cancellation, in shortlex order.
    fn children(&self) -> impl Iterator<Item = Word> + '_ {
        let forbidden = self.codes.last().map(|&c| inverse_code(c));
        (0..2 * self.rank)
            .filter(move |&c| Some(c) != forbidden)
            .map(move |c| {
                let mut codes = self.codes.clone();
                codes.push(c);
                Word {
                    rank: self.rank,
                    codes,
                }
            })
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codes
            .len()
            .cmp(&other.codes.len())
            .then_with(|| self.codes.cmp(&other.codes))
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.codes.is_empty() {
            return f.write_str("1");
        }
        for &c in &self.codes {
            let base = if c % 2 == 0 { b'a' } else { b'A' };
            write!(f, "{}", (base + c / 2) as char)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Words of norm exactly `r`, in shortlex order.
pub fn sphere_words(rank: usize, r: usize) -> Result<Vec<Word>, FgError> {
    let mut level = vec![Word::identity(rank)?];
    for _ in 0..r {
        level = level.iter().flat_map(Word::children).collect();
    }
    Ok(level)
}

/// Words of norm at most `r`, in shortlex order.
pub fn ball_words(rank: usize, r: usize) -> Result<Vec<Word>, FgError> {
    let mut level = vec![Word::identity(rank)?];
    let mut all = level.clone();
    for _ in 0..r {
        level = level.iter().flat_map(Word::children).collect();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    #[test]
    fn reduction() {
        assert!(w("a").mul(&w("A")).unwrap().is_identity());
        assert!(w("ab").mul(&w("BA")).unwrap().is_identity());
        assert_eq!(w("abA").norm(), 3);
        assert_eq!(w("aAb"), w("b"));
        assert_eq!(w("abB").mul(&w("Ab")).unwrap(), w("b"));
        assert_eq!(w("1"), w(""));
        assert_eq!(w("abAB").inverse(), w("baBA"));
        assert_eq!(
            w("a").mul(&Word::parse(3, "c").unwrap()),
            Err(FgError::RankMismatch(2, 3))
        );
    }

    #[test]
    fn parsing() {
        assert!(Word::parse(2, "ac").is_err());
        assert!(Word::parse(2, "a b").is_err());
        assert!(Word::parse(0, "").is_err());
        assert_eq!(w("aB").to_string(), "aB");
        assert_eq!(w("").to_string(), "1");
        let x = Word::from_letters(2, &[(1, 1), (2, -1)]).unwrap();
        assert_eq!(x, w("aB"));
        assert_eq!(x.letters().collect::<Vec<_>>(), vec![(1, 1), (2, -1)]);
    }

    #[test]
    fn shortlex() {
        let mut v = [w("b"), w("A"), w("aa"), w(""), w("a"), w("B")];
        v.sort();
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["1", "a", "A", "b", "B", "aa"]);
    }

    #[test]
    fn sizes() {
        for k in 1..=3usize {
            let mut total = 1;
            for r in 0..=6usize {
                let s = sphere_words(k, r).unwrap().len();
                let expected = if r == 0 { 1 } else { 2 * k * (2 * k - 1).pow(r as u32 - 1) };
                assert_eq!(s, expected);
                if r > 0 {
                    total += s;
                }
                let b = ball_words(k, r).unwrap();
                assert_eq!(b.len(), total);
                assert!(b.windows(2).all(|p| p[0] < p[1]));
            }
        }
        assert_eq!(ball_words(1, 4).unwrap().len(), 9);
    }

    #[test]
    fn distance() {
        assert_eq!(w("ab").distance(&w("aB")), 2);
        assert_eq!(w("a").distance(&w("b")), 2);
        assert_eq!(w("").distance(&w("abA")), 3);
    }
}
