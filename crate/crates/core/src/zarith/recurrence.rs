//! Solutions of `A(K)` as bi-infinite linear recurrences.
//!
//! With `D = max K`, the equation at `g = n − D` determines `x_n` from the
//! `D` values before it, and the equation at `g = n` determines `x_n` from
//! the values after it (`s_0 = 0`). So any `D` consecutive values extend
//! uniquely in both directions, and the characteristic polynomial of the
//! recurrence is the mask polynomial itself.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{is_b_arithmetic, mask_polynomial, ZError, ZSet};
use crate::exactlin::{clear_denominators, kernel_basis, periodic_system};
use crate::intpoly::{
    count_unit_circle_roots, cyclotomic, euler_phi, numeric_roots, IntPoly, DEFAULT_ROOT_TOL,
};
use crate::rational::RationalRepr;

/// Roots with `||z| − 1|` below this are treated as lying on the circle.
pub const CIRCLE_TOL: f64 = 1e-9;
pub const DEFAULT_BOUNDEDNESS_TOL: f64 = 1e-8;

/// Values `x_lo, …, x_hi` of a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceWindow<T> {
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<T>,
}

impl<T> SequenceWindow<T> {
    pub fn get(&self, n: i64) -> Option<&T> {
        if n < self.lo || n > self.hi {
            return None;
        }
        self.values.get((n - self.lo) as usize)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Indices `g` whose whole equation `{g + s_i}` lies in the window.
    pub fn supported_equations(&self, k: &ZSet) -> std::ops::RangeInclusive<i64> {
        self.lo..=(self.hi - k.max() as i64)
    }
}

impl SequenceWindow<BigRational> {
    /// Every fully supported equation sums to exactly 0.
    pub fn satisfies(&self, k: &ZSet) -> bool {
        self.supported_equations(k).all(|g| {
            k.elements()
                .iter()
                .map(|&s| self.get(g + s as i64).expect("supported"))
                .sum::<BigRational>()
                .is_zero()
        })
    }
}

/// Scalar types that can appear in a serialized window.
pub trait WindowValue {
    type Repr: Serialize;
    fn repr(&self) -> Self::Repr;
}

impl WindowValue for BigRational {
    type Repr = RationalRepr;
    fn repr(&self) -> RationalRepr {
        RationalRepr::from(self)
    }
}

impl WindowValue for f64 {
    type Repr = f64;
    fn repr(&self) -> f64 {
        *self
    }
}

impl WindowValue for i64 {
    type Repr = i64;
    fn repr(&self) -> i64 {
        *self
    }
}

impl<T: WindowValue> Serialize for SequenceWindow<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SequenceWindow", 3)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        let values: Vec<T::Repr> = self.values.iter().map(WindowValue::repr).collect();
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Extends `x_0, …, x_{D−1}` to the unique solution of `A(K)` and returns the
/// window `[lo, hi]`.
pub fn extend_recurrence(
    k: &ZSet,
    initial: &[BigRational],
    lo: i64,
    hi: i64,
) -> Result<SequenceWindow<BigRational>, ZError> {
    let d = k.max() as i64;
    if initial.len() != d as usize {
        return Err(ZError::WrongInitialCount {
            expected: d as usize,
            got: initial.len(),
        });
    }
    if lo > hi {
        return Ok(SequenceWindow {
            lo,
            hi,
            values: Vec::new(),
        });
    }
    let from = lo.min(0);
    let to = hi.max(d - 1);
    let offset = -from;
    let mut xs = vec![BigRational::zero(); (to - from + 1) as usize];
    for (i, v) in initial.iter().enumerate() {
        xs[(i as i64 + offset) as usize] = v.clone();
    }
    let elems = k.elements();
    let (last, rest) = elems.split_last().expect("nonempty");
    debug_assert_eq!(*last as i64, d);
    for n in d..=to {
        let v: BigRational = rest
            .iter()
            .map(|&s| &xs[(n - d + s as i64 + offset) as usize])
            .sum();
        xs[(n + offset) as usize] = -v;
    }
    for n in (from..0).rev() {
        let v: BigRational = elems[1..]
            .iter()
            .map(|&s| &xs[(n + s as i64 + offset) as usize])
            .sum();
        xs[(n + offset) as usize] = -v;
    }
    let values = xs[(lo - from) as usize..=(hi - from) as usize].to_vec();
    Ok(SequenceWindow { lo, hi, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusClass {
    Inside,
    OnCircle,
    Outside,
}

/// One term `b · n^power · α^n` of the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootTerm {
    pub root: [f64; 2],
    pub modulus: f64,
    pub class: ModulusClass,
    pub power: usize,
    pub coefficient: [f64; 2],
    /// Terms other than `α^n` with `|α| = 1` must vanish for boundedness.
    pub must_vanish: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundednessVerdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub verdict: BoundednessVerdict,
    pub tol: f64,
    /// Largest `|b|` among the terms that must vanish.
    pub worst_coefficient: f64,
    pub exact_circle_roots: usize,
    pub numeric_circle_roots: usize,
    pub root_data: Vec<RootTerm>,
}

/// Solves for the closed-form coefficients of the solution through `initial`
/// and checks that only unit-modulus, non-polynomial terms survive.
pub fn classify_boundedness(
    k: &ZSet,
    initial: &[BigRational],
    tol: f64,
) -> Result<BoundednessReport, ZError> {
    let d = k.max() as usize;
    if initial.len() != d {
        return Err(ZError::WrongInitialCount {
            expected: d,
            got: initial.len(),
        });
    }
    let p = mask_polynomial(k);
    let exact_circle_roots = count_unit_circle_roots(&p)?;
    let roots = numeric_roots(&p, DEFAULT_ROOT_TOL)?;

    // Confluent basis n^j α^n, j < multiplicity.
    let mut basis: Vec<(Complex64, usize, ModulusClass)> = Vec::with_capacity(d);
    let mut numeric_circle_roots = 0;
    for r in &roots {
        let modulus = r.value.norm();
        let class = if (modulus - 1.0).abs() < CIRCLE_TOL {
            numeric_circle_roots += 1;
            ModulusClass::OnCircle
        } else if modulus < 1.0 {
            ModulusClass::Inside
        } else {
            ModulusClass::Outside
        };
        for power in 0..r.multiplicity {
            basis.push((r.value, power, class));
        }
    }
    debug_assert_eq!(basis.len(), d);

    let rhs: Vec<Complex64> = initial
        .iter()
        .map(|q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let matrix: Vec<Vec<Complex64>> = (0..d)
        .map(|n| {
            basis
                .iter()
                .map(|&(alpha, power, _)| alpha.powu(n as u32) * (n as f64).powi(power as i32))
                .collect()
        })
        .collect();
    let coeffs = solve_complex(matrix, rhs);

    let mut worst: f64 = 0.0;
    let root_data: Vec<RootTerm> = basis
        .iter()
        .zip(&coeffs)
        .map(|(&(alpha, power, class), b)| {
            let must_vanish = class != ModulusClass::OnCircle || power > 0;
            if must_vanish {
                worst = worst.max(b.norm());
            }
            RootTerm {
                root: [alpha.re, alpha.im],
                modulus: alpha.norm(),
                class,
                power,
                coefficient: [b.re, b.im],
                must_vanish,
            }
        })
        .collect();

    let verdict = if numeric_circle_roots != exact_circle_roots
        || coeffs.iter().any(|b| !b.is_finite())
        || (tol..=10.0 * tol).contains(&worst)
    {
        BoundednessVerdict::Inconclusive
    } else if worst < tol {
        BoundednessVerdict::Bounded
    } else {
        BoundednessVerdict::Unbounded
    };
    Ok(BoundednessReport {
        verdict,
        tol,
        worst_coefficient: worst,
        exact_circle_roots,
        numeric_circle_roots,
        root_data,
    })
}

/// Gaussian elimination with partial pivoting.
fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Vec<Complex64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("nonempty range");
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / p;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (top, bottom) = a.split_at_mut(row);
            for (x, &v) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|j| a[row][j] * x[j]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// A real bounded solution built from the unit-circle roots only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedSolution {
    pub window: SequenceWindow<f64>,
    /// Arguments `θ` of the circle roots used, `x_n = Σ cos(n θ)`.
    pub angles: Vec<f64>,
    pub equations_checked: usize,
    pub max_abs_residual: f64,
    /// `|Σ_i x_{g+s_i}| / Σ_i |x_{g+s_i}|`, maximized over equations.
    pub max_relative_residual: f64,
}

pub fn make_bounded_solution(k: &ZSet, lo: i64, hi: i64) -> Result<BoundedSolution, ZError> {
    let (b, _) = is_b_arithmetic(k)?;
    if !b {
        return Err(ZError::NotBArithmetic);
    }
    let roots = numeric_roots(&mask_polynomial(k), DEFAULT_ROOT_TOL)?;
    let angles: Vec<f64> = roots
        .iter()
        .filter(|r| (r.value.norm() - 1.0).abs() < CIRCLE_TOL)
        .map(|r| r.value.arg())
        .collect();
    let values: Vec<f64> = (lo..=hi)
        .map(|n| angles.iter().map(|&t| (n as f64 * t).cos()).sum())
        .collect();
    let window = SequenceWindow { lo, hi, values };

    let mut checked = 0;
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for g in window.supported_equations(k) {
        let terms: Vec<f64> = k
            .elements()
            .iter()
            .map(|&s| *window.get(g + s as i64).expect("supported"))
            .collect();
        let sum: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        max_abs = max_abs.max(sum.abs());
        if scale > 0.0 {
            max_rel = max_rel.max(sum.abs() / scale);
        }
        checked += 1;
    }
    Ok(BoundedSolution {
        window,
        angles,
        equations_checked: checked,
        max_abs_residual: max_abs,
        max_relative_residual: max_rel,
    })
}

/// A nonzero primitive integer vector `v` of length `n` with every cyclic
/// equation `Σ_i v[(g + s_i) mod n] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralSolution {
    /// Smallest `m ≥ 2` with `Φ_m | P_K`.
    pub witness: u64,
    pub period: u64,
    pub values: Vec<BigInt>,
    pub verified: bool,
}

impl Serialize for IntegralSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntegralSolution", 4)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("period", &self.period)?;
        let vals: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|v| match v.to_i64() {
                Some(i) => serde_json::json!(i),
                None => serde_json::json!(v.to_string()),
            })
            .collect();
        st.serialize_field("values", &vals)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

pub(crate) fn smallest_cyclotomic_witness(p: &IntPoly) -> Result<Option<u64>, ZError> {
    let deg = p.degree().unwrap_or(0) as u64;
    for m in 2..=2 * deg * deg {
        if euler_phi(m) <= deg && cyclotomic(m)?.divides(p) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Integral periodic solution with period `n = m·⌈(|K|+1)/m⌉`, from the first
/// kernel vector of the period-`n` system. `None` when no cyclotomic
/// polynomial divides the mask polynomial.
pub fn integral_periodic_solution(k: &ZSet) -> Result<Option<IntegralSolution>, ZError> {
    let Some(m) = smallest_cyclotomic_witness(&mask_polynomial(k))? else {
        return Ok(None);
    };
    let size = k.len() as u64 + 1;
    let n = m * size.div_ceil(m);
    let system = periodic_system(k.elements(), n);
    let basis = kernel_basis(&system);
    let first = basis
        .first()
        .expect("Φ_m | P_K with m | n makes the system singular");
    let values = clear_denominators(first)?;
    let verified = values.iter().any(|v| !v.is_zero())
        && (0..n).all(|g| {
            k.elements()
                .iter()
                .map(|&s| &values[((g + s) % n) as usize])
                .sum::<BigInt>()
                .is_zero()
        });
    Ok(Some(IntegralSolution {
        witness: m,
        period: n,
        values,
        verified,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zarith::normalize_set;

    fn z(raw: &[i64]) -> ZSet {
        normalize_set(raw).unwrap()
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn period_three_pattern() {
        let w = extend_recurrence(&z(&[0, 1, 2]), &qs(&[1, 1]), -3, 5).unwrap();
        assert_eq!(w.values, qs(&[1, 1, -2, 1, 1, -2, 1, 1, -2]));
        assert!(w.satisfies(&z(&[0, 1, 2])));
    }

    #[test]
    fn zero_one_three_recurrence() {
        let k = z(&[0, 1, 3]);
        let w = extend_recurrence(&k, &qs(&[1, 0, 0]), -1, 5).unwrap();
        assert_eq!(w.values, qs(&[-1, 1, 0, 0, -1, 0, 1]));
        assert!(w.satisfies(&k));
        let w = extend_recurrence(&k, &qs(&[0, 0, 0]), -10, 10).unwrap();
        assert!(w.values.iter().all(Zero::is_zero));
        assert_eq!(
            extend_recurrence(&k, &qs(&[1]), 0, 3),
            Err(ZError::WrongInitialCount {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn window_far_from_origin() {
        let k = z(&[0, 1, 3]);
        let w = extend_recurrence(&k, &qs(&[1, 0, 0]), 20, 30).unwrap();
        let full = extend_recurrence(&k, &qs(&[1, 0, 0]), 0, 30).unwrap();
        assert_eq!(w.get(25), full.get(25));
        let w = extend_recurrence(&k, &qs(&[1, 0, 0]), -30, -20).unwrap();
        assert!(w.satisfies(&k));
    }

    #[test]
    fn boundedness_examples() {
        let r = classify_boundedness(&z(&[0, 1, 2]), &qs(&[1, 1]), DEFAULT_BOUNDEDNESS_TOL).unwrap();
        assert_eq!(r.verdict, BoundednessVerdict::Bounded);
        let r = classify_boundedness(&z(&[0, 1, 3]), &qs(&[1, 0, 0]), DEFAULT_BOUNDEDNESS_TOL)
            .unwrap();
        assert_eq!(r.verdict, BoundednessVerdict::Unbounded);
        let r = classify_boundedness(&z(&[0, 1, 3]), &qs(&[0, 0, 0]), DEFAULT_BOUNDEDNESS_TOL)
            .unwrap();
        assert_eq!(r.verdict, BoundednessVerdict::Bounded);
    }

    #[test]
    fn double_root_on_circle_is_unbounded() {
        // {0,1,3,4}: P = (1+x)^2 (1-x+x^2); x_n = n(-1)^n solves A(K)
        let k = z(&[0, 1, 3, 4]);
        let init = qs(&[0, -1, 2, -3]);
        let w = extend_recurrence(&k, &init, 0, 12).unwrap();
        assert_eq!(w.get(12), Some(&BigRational::from_integer(12.into())));
        let r = classify_boundedness(&k, &init, DEFAULT_BOUNDEDNESS_TOL).unwrap();
        assert_eq!(r.verdict, BoundednessVerdict::Unbounded);
        // while (1,-1,1,-1) is bounded
        let r = classify_boundedness(&k, &qs(&[1, -1, 1, -1]), DEFAULT_BOUNDEDNESS_TOL).unwrap();
        assert_eq!(r.verdict, BoundednessVerdict::Bounded);
    }

    #[test]
    fn bounded_solutions() {
        let s = make_bounded_solution(&z(&[0, 1, 3, 5, 6]), -40, 40).unwrap();
        assert!(s.max_relative_residual < 1e-9);
        assert!(s.window.values.iter().any(|v| v.abs() > 0.5));
        assert_eq!(s.angles.len(), 4);

        let s = make_bounded_solution(&z(&[0, 1, 2]), 0, 8).unwrap();
        for n in 0..6 {
            assert!((s.window.values[n] - s.window.values[n + 3]).abs() < 1e-12);
        }
        assert_eq!(
            make_bounded_solution(&z(&[0, 1, 3]), 0, 10),
            Err(ZError::NotBArithmetic)
        );
    }

    #[test]
    fn integral_solutions() {
        let s = integral_periodic_solution(&z(&[0, 1, 2])).unwrap().unwrap();
        assert_eq!((s.witness, s.period), (3, 6));
        assert!(s.verified);
        assert!(integral_periodic_solution(&z(&[0, 1, 3])).unwrap().is_none());
        let s = integral_periodic_solution(&z(&[0, 1, 3, 4])).unwrap().unwrap();
        assert_eq!(s.witness, 2);
        assert!(s.verified);
        // collisions mod n: n = 6 for {0,3,5,7,9}
        let s = integral_periodic_solution(&z(&[0, 3, 5, 7, 9])).unwrap().unwrap();
        assert_eq!((s.witness, s.period), (6, 6));
        assert!(s.verified);
    }

    #[test]
    fn json_window() {
        let w = extend_recurrence(&z(&[0, 1]), &qs(&[2]), 0, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"lo":0,"hi":1,"values":[{"num":"2","den":"1"},{"num":"-2","den":"1"}]}"#
        );
    }
}
