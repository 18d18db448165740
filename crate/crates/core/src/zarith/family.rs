//! Explicit sets that are p-arithmetic without being tiles, one for every
//! cardinality above 3.

use super::{normalize_set, ZError, ZSet};
use crate::intpoly::is_prime_power;

fn is_prime(n: u64) -> bool {
    is_prime_power(n) == Some(n)
}

/// `{0, 3, p} ∪ {p+2, …, 2p−3} ∪ {2p−1}` for a prime `p > 3`: its mask polynomial
/// is `Φ_6 · (1 + x + x^p + … + x^{2p−3})`.
pub fn family_parith_nontile(p: u64) -> Result<ZSet, ZError> {
    if p <= 3 || !is_prime(p) {
        return Err(ZError::BadParameters(format!("{p} is not a prime greater than 3")));
    }
    let mut raw = vec![0i64, 3];
    raw.push(p as i64);
    raw.extend((2..=p - 3).map(|i| (p + i) as i64));
    raw.push((2 * p - 1) as i64);
    normalize_set(&raw)
}

/// `{0, 1, …, dp+d−1} \ {p, 2p+1, 3p+2, …, dp+d−1}` for a prime `p` and
/// `d > 1`; its cardinality is `dp` and `Φ_p` divides its mask polynomial.
pub fn family_parith_nontile_composite(p: u64, d: u64) -> Result<ZSet, ZError> {
    if !is_prime(p) || d < 2 {
        return Err(ZError::BadParameters(format!(
            "need a prime p and d > 1, got p = {p}, d = {d}"
        )));
    }
    let top = d * p + d - 1;
    let removed: Vec<u64> = (1..=d).map(|j| j * p + j - 1).collect();
    let raw: Vec<i64> = (0..=top)
        .filter(|x| !removed.contains(x))
        .map(|x| x as i64)
        .collect();
    normalize_set(&raw)
}
