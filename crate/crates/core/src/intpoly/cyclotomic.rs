use std::collections::BTreeSet;

use super::{IntPoly, PolyError};

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(p, e)` pairs, ascending in `p`.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `Some(p)` when `n = p^a` with `a ≥ 1`.
pub fn is_prime_power(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// The `m`-th cyclotomic polynomial, obtained by dividing `x^m - 1` by every
/// `Φ_d` with `d | m`, `d < m`.
pub fn cyclotomic(m: u64) -> Result<IntPoly, PolyError> {
    if m == 0 {
        return Err(PolyError::BadIndex);
    }
    // Every divisor of a divisor of m is itself a divisor of m, so one
    // ascending pass builds all the Φ_d we need.
    let divs = divisors(m);
    let mut table: Vec<(u64, IntPoly)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut phi = IntPoly::x_pow_minus_one(d as usize);
        for (e, phi_e) in &table {
            if d % e == 0 {
                phi = phi.div_exact(phi_e).expect("Φ_e divides x^d - 1 for e | d");
            }
        }
        table.push((d, phi));
    }
    Ok(table.pop().expect("m has at least one divisor").1)
}

/// All `m ≥ 1` with `Φ_m | P`, ascending.
///
/// Since `φ(m) ≥ √(m/2)`, any cyclotomic factor of a degree-`d` polynomial has
/// `m ≤ 2d²`; indices with `φ(m) > d` are skipped before any division.
pub fn cyclotomic_divisors(p: &IntPoly) -> Result<BTreeSet<u64>, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)? as u64;
    let mut out = BTreeSet::new();
    if deg == 0 {
        return Ok(out);
    }
    let bound = 2 * deg * deg;
    for m in 1..=bound {
        if euler_phi(m) > deg {
            continue;
        }
        let phi = cyclotomic(m)?;
        if phi.divides(p) {
            out.insert(m);
        }
    }
    Ok(out)
}
