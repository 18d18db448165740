//! Exact count of the roots of an integer polynomial on the unit circle.
//!
//! A root `z` with `|z| = 1` satisfies `conj(z) = 1/z`, so for real
//! coefficients it is also a root of the reciprocal polynomial. The circle
//! roots therefore all live in `gcd(P, P*)`, whose squarefree part is, after
//! removing `x ∓ 1`, a self-reciprocal polynomial of even degree `2m`. Such a
//! polynomial is `x^m · H(x + 1/x)` with `deg H = m`, and `z` is on the circle
//! exactly when `t = z + 1/z` is real with `|t| < 2`.

use num_traits::Zero;
use serde::Serialize;

use super::sturm::{int_q, sturm_count};
use super::{IntPoly, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitCircleRoots {
    pub at_plus_one: bool,
    pub at_minus_one: bool,
    /// Conjugate pairs `e^{±iθ}` with `0 < θ < π`.
    pub pairs: usize,
}

impl UnitCircleRoots {
    pub fn count(&self) -> usize {
        self.at_plus_one as usize + self.at_minus_one as usize + 2 * self.pairs
    }
}

/// Distinct roots of `p` on the unit circle, classified.
pub fn unit_circle_roots(p: &IntPoly) -> Result<UnitCircleRoots, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, p) = p.split_x_power();
    let g = p.gcd(&p.reciprocal());
    let mut s = g.squarefree_part();

    let mut strip = |root: i64| -> bool {
        let lin = IntPoly::from_i64(&[-root, 1]);
        match s.div_exact(&lin) {
            Ok(q) => {
                s = q;
                true
            }
            Err(_) => false,
        }
    };
    let at_plus_one = strip(1);
    let at_minus_one = strip(-1);

    let deg = s.degree().expect("nonzero");
    if deg == 0 {
        return Ok(UnitCircleRoots {
            at_plus_one,
            at_minus_one,
            pairs: 0,
        });
    }
    debug_assert!(deg % 2 == 0, "self-reciprocal part has even degree");
    let h = trace_polynomial_unchecked(&s);
    let mut pairs = sturm_count(&h, &int_q(-2), &int_q(2))?;
    if h.sign_at(&int_q(2)) == 0 {
        pairs -= 1;
    }
    Ok(UnitCircleRoots {
        at_plus_one,
        at_minus_one,
        pairs,
    })
}

/// Number of distinct roots of `p` with `|z| = 1`.
pub fn count_unit_circle_roots(p: &IntPoly) -> Result<usize, PolyError> {
    unit_circle_roots(p).map(|r| r.count())
}

/// For self-reciprocal `s` of degree `2m`, the degree-`m` polynomial `H` with
/// `s(x) = x^m · H(x + 1/x)`.
pub fn trace_polynomial(s: &IntPoly) -> Result<IntPoly, PolyError> {
    let deg = s.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg % 2 == 1 || *s != s.reciprocal() || s.coeff(0).is_zero() {
        return Err(PolyError::NotSelfReciprocal);
    }
    Ok(trace_polynomial_unchecked(s))
}

fn trace_polynomial_unchecked(s: &IntPoly) -> IntPoly {
    let deg = s.degree().expect("nonzero");
    let m = deg / 2;
    // x^j + x^-j as a polynomial in t: T_0 = 2, T_1 = t, T_{j+1} = t·T_j - T_{j-1}
    let t = IntPoly::from_i64(&[0, 1]);
    let mut prev = IntPoly::from_i64(&[2]);
    let mut cur = t.clone();
    let mut h = IntPoly::constant(s.coeff(m));
    for j in 1..=m {
        let c = s.coeff(m + j);
        if !c.is_zero() {
            h = &h + &cur.scale(&c);
        }
        let next = &(&t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    debug_assert!((0..=deg).all(|i| s.coeff(i) == s.coeff(deg - i)));
    h
}

#[cfg(test)]
mod tests {
    use super::super::cyclotomic;
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        assert_eq!(count_unit_circle_roots(&p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(count_unit_circle_roots(&p(&[1, 1, 0, 1])).unwrap(), 0);
        assert_eq!(count_unit_circle_roots(&p(&[1, 1, 0, 1, 0, 1, 1])).unwrap(), 4);
    }

    #[test]
    fn sextic_trace_polynomial() {
        let h = trace_polynomial(&p(&[1, 1, 0, 1, 0, 1, 1])).unwrap();
        assert_eq!(h, p(&[-1, -3, 1, 1]));
        assert_eq!(trace_polynomial(&p(&[1, 1, 0, 1])), Err(PolyError::NotSelfReciprocal));
        assert_eq!(trace_polynomial(&p(&[1, 2])), Err(PolyError::NotSelfReciprocal));
    }

    #[test]
    fn plus_minus_one_and_multiplicity() {
        let r = unit_circle_roots(&IntPoly::x_pow_minus_one(2)).unwrap();
        assert!(r.at_plus_one && r.at_minus_one);
        assert_eq!(r.count(), 2);
        // (x+1)^3 Φ_3^2: distinct roots only
        let f = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[1, 1]);
        let f = &(&f * &p(&[1, 1, 1])) * &p(&[1, 1, 1]);
        assert_eq!(count_unit_circle_roots(&f).unwrap(), 3);
    }

    #[test]
    fn reciprocal_pairs_off_the_circle_are_not_counted() {
        // x^2 - 3x + 1 has roots (3 ± √5)/2, a reciprocal real pair
        assert_eq!(count_unit_circle_roots(&p(&[1, -3, 1])).unwrap(), 0);
        // x^2 - 2x + 1 = (x-1)^2
        assert_eq!(count_unit_circle_roots(&p(&[1, -2, 1])).unwrap(), 1);
        // Lehmer's polynomial: two real roots off the circle, eight on it
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert_eq!(count_unit_circle_roots(&lehmer).unwrap(), 8);
    }

    #[test]
    fn zeros_at_origin_are_ignored() {
        assert_eq!(count_unit_circle_roots(&p(&[0, 0, 1, 1, 1])).unwrap(), 2);
        assert_eq!(count_unit_circle_roots(&p(&[0, 3])).unwrap(), 0);
        assert_eq!(count_unit_circle_roots(&IntPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn cyclotomic_counts_equal_phi() {
        for m in 1..=50 {
            let phi = cyclotomic(m).unwrap();
            assert_eq!(
                count_unit_circle_roots(&phi).unwrap() as u64,
                super::super::euler_phi(m),
                "m = {m}"
            );
        }
    }
}
