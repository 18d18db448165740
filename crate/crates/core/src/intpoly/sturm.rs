//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{IntPoly, PolyError};

/// Sturm sequence `H, H', -rem(H, H'), …` over ℤ[x].
///
/// Each remainder is a sign-corrected pseudo-remainder reduced to its
/// primitive part by a positive factor, which keeps coefficients small
/// without disturbing any sign.
pub fn sturm_sequence(h: &IntPoly) -> Vec<IntPoly> {
    let mut seq = Vec::new();
    if h.is_zero() {
        return seq;
    }
    seq.push(h.clone());
    let d = h.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let a = &seq[n - 2];
        let b = &seq[n - 1];
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let mut r = a.pseudo_rem(b).expect("sequence members are nonzero");
        if r.is_zero() {
            break;
        }
        // prem multiplies by lc(b)^(delta+1), which is negative when lc(b) < 0
        // and the exponent is odd.
        if b.leading().unwrap().is_negative() && (delta + 1) % 2 == 1 {
            r = -r;
        }
        let content = r.content();
        let next = IntPoly::new(r.coeffs().iter().map(|c| -(c / &content)).collect());
        seq.push(next);
    }
    seq
}

fn variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `h` in the half-open interval `(lo, hi]`.
///
/// `NotSquarefree` is returned only when a repeated root actually lies in the
/// interval; a repeated root outside it does not affect the count.
pub fn sturm_count(h: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    if h.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    let seq = sturm_sequence(h);
    let last = seq.last().expect("nonempty");
    if !last.is_constant() {
        // The last member is gcd(h, h') up to a constant factor.
        let g = last.squarefree_part();
        if sturm_count(&g, lo, hi)? > 0 {
            return Err(PolyError::NotSquarefree);
        }
    }
    let v_lo = variations(&seq, lo);
    let v_hi = variations(&seq, hi);
    Ok(v_lo.saturating_sub(v_hi))
}

pub(crate) fn int_q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
