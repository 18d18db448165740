//! Exact rational linear algebra for the periodic systems over ℤ_n.
//!
//! Row reduction is fraction-free (Bareiss) on an integer copy of the matrix;
//! only the final reduced echelon form and the kernel vectors are rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::rational::RationalRepr;
use crate::zarith::ZSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("elements collide modulo {0}")]
    BadModulus(u64),
    #[error("cannot clear denominators of the zero vector")]
    ZeroVector,
    #[error("matrix is {rows}x{cols} but {len} entries were given")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: {0} columns vs vector of length {1}")]
    DimensionMismatch(usize, usize),
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatVector(pub Vec<BigRational>);

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let entries = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector, LinError> {
        if v.0.len() != self.cols {
            return Err(LinError::DimensionMismatch(self.cols, v.0.len()));
        }
        Ok(RatVector(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(&v.0)
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        fraction_free_echelon(&mut m, self.cols).len()
    }

    /// Each row scaled by the lcm of its denominators; the row space is
    /// unchanged.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Bareiss elimination to row echelon form. Pivot: first row (from the
/// current one down) with a nonzero entry in the current column. Returns the
/// pivot columns.
fn fraction_free_echelon(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division is exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column in
/// increasing column order. Each vector has a 1 in its free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<RatVector> {
    let cols = m.cols;
    let mut ints = m.integer_rows();
    let pivots = fraction_free_echelon(&mut ints, cols);
    let rank = pivots.len();

    // Reduced echelon form over ℚ from the integer echelon rows.
    let mut rref: Vec<Vec<BigRational>> = ints
        .into_iter()
        .take(rank)
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (r, &pc) in pivots.iter().enumerate() {
        let lead = rref[r][pc].clone();
        for x in rref[r].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = rref[r].clone();
        for (i, row) in rref.iter_mut().enumerate().take(rank) {
            if i == r || row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref[r][free].clone();
            }
            RatVector(v)
        })
        .collect()
}

/// Scale a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn clear_denominators(v: &RatVector) -> Result<Vec<BigInt>, LinError> {
    let first = v.0.iter().find(|q| !q.is_zero()).ok_or(LinError::ZeroVector)?;
    let l = v.0.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = v.0.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if first.is_negative() {
        g = -g;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    Ok(ints)
}

/// The `n × n` matrix of `A(K)` over ℤ_n: row `g` has a 1 in each column
/// `(s_i + g) mod n`. The reduced elements must be distinct.
pub fn circulant_from_set(k: &ZSet, n: u64) -> Result<RatMatrix, LinError> {
    let mut residues: Vec<u64> = k.elements().iter().map(|s| s % n.max(1)).collect();
    residues.sort_unstable();
    if n == 0 || residues.windows(2).any(|w| w[0] == w[1]) {
        return Err(LinError::BadModulus(n));
    }
    Ok(periodic_system(k.elements(), n))
}

/// Like [`circulant_from_set`] but tolerates collisions mod `n`, counting
/// them with multiplicity. This is the exact system satisfied by an
/// `n`-periodic solution over ℤ.
pub(crate) fn periodic_system(elements: &[u64], n: u64) -> RatMatrix {
    let n_us = n as usize;
    let mut counts = vec![0u32; n_us * n_us];
    for g in 0..n_us {
        for &s in elements {
            counts[g * n_us + ((s + g as u64) % n) as usize] += 1;
        }
    }
    RatMatrix {
        rows: n_us,
        cols: n_us,
        entries: counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect(),
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<RationalRepr> = self.row(r).iter().map(RationalRepr::from).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serialize_vec(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zarith::normalize_set;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn circulant_examples() {
        let m = circulant_from_set(&normalize_set(&[0, 1]).unwrap(), 3).unwrap();
        let expect = [[1, 1, 0], [0, 1, 1], [1, 0, 1]];
        for (r, row) in expect.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(m.get(r, c), &q(v, 1));
            }
        }
        let m6 = circulant_from_set(&normalize_set(&[0, 1, 2]).unwrap(), 6).unwrap();
        for r in 0..6 {
            assert_eq!(m6.row(r).iter().filter(|x| x.is_one()).count(), 3);
        }
        assert_eq!(m6.rank(), 4);
        assert_eq!(
            circulant_from_set(&normalize_set(&[0, 3]).unwrap(), 3),
            Err(LinError::BadModulus(3))
        );
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 2)).len(), 2);
        let m6 = circulant_from_set(&normalize_set(&[0, 1, 2]).unwrap(), 6).unwrap();
        let basis = kernel_basis(&m6);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m6.mul_vec(v).unwrap().0.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_of_rational_matrix() {
        // [[1/2, 1/3, 1], [1, 2/3, 2]] has rank 1
        let m = RatMatrix::new(2, 3, vec![q(1, 2), q(1, 3), q(1, 1), q(1, 1), q(2, 3), q(2, 1)])
            .unwrap();
        assert_eq!(m.rank(), 1);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).unwrap().0.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(clear_denominators(&RatVector(vec![q(1, 2), q(1, 3)])).unwrap(), ints(&[3, 2]));
        assert_eq!(
            clear_denominators(&RatVector(vec![q(1, 1), q(1, 1), q(-2, 1)])).unwrap(),
            ints(&[1, 1, -2])
        );
        assert_eq!(
            clear_denominators(&RatVector(vec![q(-2, 4), q(1, 4)])).unwrap(),
            ints(&[2, -1])
        );
        assert_eq!(
            clear_denominators(&RatVector(vec![q(0, 1), q(0, 1)])),
            Err(LinError::ZeroVector)
        );
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(RatMatrix::new(2, 2, vec![]), Err(LinError::Shape { .. })));
        assert!(RatMatrix::identity(2).mul_vec(&RatVector(vec![q(1, 1)])).is_err());
    }

    #[test]
    fn periodic_system_counts_collisions() {
        let m = periodic_system(&[0, 3, 5, 7, 9], 6);
        // 3 and 9 coincide mod 6
        assert_eq!(m.get(0, 3), &q(2, 1));
        assert_eq!(m.row(0).iter().sum::<BigRational>(), q(5, 1));
    }

    #[test]
    fn json_matrix() {
        let s = serde_json::to_string(&RatMatrix::identity(1)).unwrap();
        assert_eq!(s, r#"[[{"num":"1","den":"1"}]]"#);
    }
}
