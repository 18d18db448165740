//! Finite subsets of ℤ: tiling, bounded and periodic solutions of the
//! associated homogeneous system `Σ_i x_{g + s_i} = 0`.

mod classify;
mod family;
mod recurrence;
mod tile;

pub use classify::{
    coven_meyerowitz_report, is_arithmetic_zn, is_b_arithmetic, is_p_arithmetic,
    newman_exponent, newman_prime_test, CovenMeyerowitzReport,
};
pub use family::{family_parith_nontile, family_parith_nontile_composite};
pub use recurrence::{
    classify_boundedness, extend_recurrence, integral_periodic_solution, make_bounded_solution,
    BoundedSolution, BoundednessReport, BoundednessVerdict, IntegralSolution, ModulusClass,
    RootTerm, SequenceWindow, WindowValue, CIRCLE_TOL, DEFAULT_BOUNDEDNESS_TOL,
};
pub use tile::{
    decide_tile_z, tile_zn_exact_cover, tiling_to_solution, verify_zn_cover, PeriodicSolution,
    TileResultZ, TilingCertificate, MAX_AUTOMATON_DIAMETER,
};

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::LinError;
use crate::intpoly::{IntPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("the set is empty")]
    Empty,
    #[error("duplicate element {0}")]
    DuplicateElements(i64),
    #[error("the set does not generate ℤ (gcd of nonzero elements is not 1)")]
    DoesNotGenerate,
    #[error("cardinality {0} is not prime")]
    CardinalityNotPrime(usize),
    #[error("elements collide modulo {0}")]
    BadModulus(u64),
    #[error("modulus {n} must exceed the set size {k}")]
    ModulusTooSmall { n: u64, k: usize },
    #[error("expected {expected} initial values, got {got}")]
    WrongInitialCount { expected: usize, got: usize },
    #[error("set has no nontrivial bounded solution")]
    NotBArithmetic,
    #[error("certificate is not an exact partition: {0}")]
    BadCertificate(String),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("elements too large for the tiling automaton (max {0})")]
    TooLarge(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// Finite subset of ℤ translated so that its minimum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZSet {
    elements: Vec<u64>,
    generates: bool,
}

/// Translate, sort and validate a raw list of integers.
pub fn normalize_set(raw: &[i64]) -> Result<ZSet, ZError> {
    let mut v = raw.to_vec();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(ZError::DuplicateElements(w[0]));
    }
    let min = *v.first().ok_or(ZError::Empty)?;
    let elements: Vec<u64> = v.iter().map(|&x| (x as i128 - min as i128) as u64).collect();
    Ok(ZSet::from_sorted(elements))
}

impl ZSet {
    /// Build from elements that are already sorted, distinct and start at 0.
    fn from_sorted(elements: Vec<u64>) -> ZSet {
        let g = elements.iter().skip(1).fold(0u64, |acc, &s| acc.gcd(&s));
        ZSet {
            generates: g == 1,
            elements,
        }
    }

    pub fn new(raw: &[i64]) -> Result<ZSet, ZError> {
        normalize_set(raw)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest element, which is also the diameter.
    pub fn max(&self) -> u64 {
        *self.elements.last().expect("nonempty")
    }

    /// gcd of the nonzero elements equals 1.
    pub fn generates(&self) -> bool {
        self.generates
    }

    pub(crate) fn require_generating(&self) -> Result<(), ZError> {
        if self.generates {
            Ok(())
        } else {
            Err(ZError::DoesNotGenerate)
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `K / gcd(K)`, which generates ℤ unless `K = {0}`.
    pub fn primitive(&self) -> ZSet {
        let g = self.elements.iter().fold(0u64, |acc, &s| acc.gcd(&s));
        if g <= 1 {
            return self.clone();
        }
        ZSet::from_sorted(self.elements.iter().map(|s| s / g).collect())
    }
}

/// The mask polynomial `Σ_i x^{s_i}`.
pub fn mask_polynomial(k: &ZSet) -> IntPoly {
    IntPoly::from_exponents(k.elements.iter().map(|&s| s as usize))
}

impl fmt::Display for ZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ZSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let k = normalize_set(&[5, 6, 8]).unwrap();
        assert_eq!(k.elements(), &[0, 1, 3]);
        assert!(k.generates());
        let k = normalize_set(&[0, 2, 4]).unwrap();
        assert!(!k.generates());
        let k = normalize_set(&[9, 0, 5, 3, 7]).unwrap();
        assert_eq!(k.elements(), &[0, 3, 5, 7, 9]);
        assert!(k.generates());
        assert_eq!(normalize_set(&[-3, -1]).unwrap().elements(), &[0, 2]);
        assert_eq!(normalize_set(&[1, 2, 1]), Err(ZError::DuplicateElements(1)));
        assert_eq!(normalize_set(&[]), Err(ZError::Empty));
        assert!(!normalize_set(&[7]).unwrap().generates());
    }

    #[test]
    fn primitive_reduction() {
        let k = normalize_set(&[0, 4, 6]).unwrap().primitive();
        assert_eq!(k.elements(), &[0, 2, 3]);
        assert!(k.generates());
        assert_eq!(normalize_set(&[3]).unwrap().primitive().elements(), &[0]);
    }

    #[test]
    fn mask_polynomials() {
        let m = |raw: &[i64]| mask_polynomial(&normalize_set(raw).unwrap());
        assert_eq!(m(&[0, 1, 2]), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(m(&[0, 1, 3, 5, 6]), IntPoly::from_i64(&[1, 1, 0, 1, 0, 1, 1]));
        assert_eq!(
            m(&[0, 3, 5, 7, 9]),
            IntPoly::from_i64(&[1, 0, 0, 1, 0, 1, 0, 1, 0, 1])
        );
    }

    #[test]
    fn json_form() {
        let k = normalize_set(&[2, 3, 5]).unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), "[0,1,3]");
        assert_eq!(k.to_string(), "{0,1,3}");
    }
}
