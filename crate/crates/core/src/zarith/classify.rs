use std::collections::BTreeMap;

use serde::Serialize;

use super::{mask_polynomial, ZError, ZSet};
use crate::intpoly::{
    count_unit_circle_roots, cyclotomic, cyclotomic_divisors, euler_phi, is_prime_power, IntPoly,
};

/// Whether `A(K)` has a nontrivial bounded solution, i.e. whether the mask
/// polynomial has a root on the unit circle. Also returns the number of
/// distinct circle roots.
pub fn is_b_arithmetic(k: &ZSet) -> Result<(bool, usize), ZError> {
    k.require_generating()?;
    let count = count_unit_circle_roots(&mask_polynomial(k))?;
    Ok((count > 0, count))
}

/// Smallest `m ≥ 2` with `Φ_m | P_K`, if any. Such an `m` exists exactly when
/// `A(K)` has a nontrivial periodic solution.
pub fn is_p_arithmetic(k: &ZSet) -> Result<Option<u64>, ZError> {
    k.require_generating()?;
    let p = mask_polynomial(k);
    let deg = p.degree().unwrap_or(0) as u64;
    for m in 2..=2 * deg * deg {
        if euler_phi(m) <= deg && cyclotomic(m)?.divides(&p) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Periodic solvability with a fixed period `n`: the `n × n` circulant is
/// singular iff `gcd(P_K, x^n - 1) ≠ 1`.
pub fn is_arithmetic_zn(k: &ZSet, n: u64) -> Result<bool, ZError> {
    if n <= k.len() as u64 {
        return Err(ZError::ModulusTooSmall { n, k: k.len() });
    }
    let g = mask_polynomial(k).gcd(&IntPoly::x_pow_minus_one(n as usize));
    Ok(!g.is_constant())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CovenMeyerowitzReport {
    /// `{ m ≥ 2 : Φ_m | P_K }`
    pub r_k: Vec<u64>,
    /// Prime powers in `r_k`.
    pub s_k: Vec<u64>,
    /// `P_K(1) = |K|`.
    pub mask_at_one: u64,
    /// `Π_{s ∈ S_K} Φ_s(1)`, which is the product of the bases `p`.
    pub prime_power_product: u64,
    pub t1: bool,
    pub t2: bool,
    /// First combination of pairwise coprime prime powers whose product is
    /// missing from `r_k`.
    pub t2_violation: Option<Vec<u64>>,
}

pub fn coven_meyerowitz_report(k: &ZSet) -> CovenMeyerowitzReport {
    let p = mask_polynomial(k);
    let r_k: Vec<u64> = cyclotomic_divisors(&p)
        .expect("mask polynomial is nonzero")
        .into_iter()
        .filter(|&m| m >= 2)
        .collect();
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut s_k = Vec::new();
    for &m in &r_k {
        if let Some(base) = is_prime_power(m) {
            s_k.push(m);
            by_prime.entry(base).or_default().push(m);
        }
    }
    let prime_power_product = by_prime
        .iter()
        .fold(1u64, |acc, (&base, powers)| {
            (0..powers.len()).fold(acc, |a, _| a.saturating_mul(base))
        });
    let mask_at_one = k.len() as u64;
    let groups: Vec<&Vec<u64>> = by_prime.values().collect();
    let t2_violation = find_t2_violation(&groups, &r_k);
    CovenMeyerowitzReport {
        t1: prime_power_product == mask_at_one,
        t2: t2_violation.is_none(),
        r_k,
        s_k,
        mask_at_one,
        prime_power_product,
        t2_violation,
    }
}

/// Choose at most one prime power per base; every choice of two or more must
/// multiply into `r_k`.
fn find_t2_violation(groups: &[&Vec<u64>], r_k: &[u64]) -> Option<Vec<u64>> {
    fn walk(
        groups: &[&Vec<u64>],
        r_k: &[u64],
        chosen: &mut Vec<u64>,
        product: u64,
    ) -> Option<Vec<u64>> {
        if chosen.len() >= 2 && r_k.binary_search(&product).is_err() {
            return Some(chosen.clone());
        }
        for (i, group) in groups.iter().enumerate() {
            for &s in group.iter() {
                chosen.push(s);
                let found = walk(&groups[i + 1..], r_k, chosen, product.saturating_mul(s));
                chosen.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
    walk(groups, r_k, &mut Vec::new(), 1)
}

/// For prime `|K| = p`: some `e ≥ 0` makes all elements congruent mod `p^e`
/// and pairwise incongruent mod `p^(e+1)`. Returns that `e`.
pub fn newman_exponent(k: &ZSet) -> Result<Option<u32>, ZError> {
    let p = k.len() as u64;
    if is_prime_power(p).is_none_or(|base| base != p) {
        return Err(ZError::CardinalityNotPrime(k.len()));
    }
    // Normalized sets contain 0, so "all congruent mod p^e" means p^e divides
    // every element.
    let mut e = 0u32;
    let mut pe: u64 = 1;
    loop {
        let Some(next) = pe.checked_mul(p) else {
            return Ok(None);
        };
        let mut residues: Vec<u64> = k.elements().iter().map(|s| s % next).collect();
        residues.sort_unstable();
        if residues.windows(2).all(|w| w[0] != w[1]) {
            return Ok(Some(e));
        }
        if k.elements().iter().any(|s| s % next != 0) {
            return Ok(None);
        }
        pe = next;
        e += 1;
    }
}

/// Tile test for sets of prime cardinality.
pub fn newman_prime_test(k: &ZSet) -> Result<bool, ZError> {
    newman_exponent(k).map(|e| e.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zarith::normalize_set;

    fn z(raw: &[i64]) -> ZSet {
        normalize_set(raw).unwrap()
    }

    #[test]
    fn b_arithmetic_examples() {
        assert_eq!(is_b_arithmetic(&z(&[0, 1, 3, 5, 6])).unwrap(), (true, 4));
        assert_eq!(is_b_arithmetic(&z(&[0, 1, 3])).unwrap(), (false, 0));
        assert_eq!(is_b_arithmetic(&z(&[0, 1, 2])).unwrap(), (true, 2));
        assert_eq!(is_b_arithmetic(&z(&[0, 2, 4])), Err(ZError::DoesNotGenerate));
    }

    #[test]
    fn p_arithmetic_examples() {
        assert_eq!(is_p_arithmetic(&z(&[0, 3, 5, 7, 9])).unwrap(), Some(6));
        assert_eq!(is_p_arithmetic(&z(&[0, 1, 3, 5, 6])).unwrap(), None);
        assert_eq!(is_p_arithmetic(&z(&[0, 1, 2])).unwrap(), Some(3));
        assert_eq!(is_p_arithmetic(&z(&[0, 4])), Err(ZError::DoesNotGenerate));
    }

    #[test]
    fn coven_meyerowitz_examples() {
        let r = coven_meyerowitz_report(&z(&[0, 3, 5, 7, 9]));
        assert!(!r.t1);
        assert_eq!((r.mask_at_one, r.prime_power_product), (5, 1));
        assert!(r.s_k.is_empty());
        assert!(r.t2);

        let r = coven_meyerowitz_report(&z(&[0, 2, 3, 5, 6, 8]));
        assert_eq!(r.r_k, vec![4, 9]);
        assert_eq!(r.s_k, vec![4, 9]);
        assert!(r.t1);
        assert!(!r.t2);
        assert_eq!(r.t2_violation, Some(vec![4, 9]));

        let r = coven_meyerowitz_report(&z(&[0, 1, 2]));
        assert_eq!((r.r_k.clone(), r.s_k.clone(), r.t1, r.t2), (vec![3], vec![3], true, true));

        // {0,1,2,3,4,5} = {0,1}⊕{0,2,4}: R = {2,3,6}, S = {2,3}, 6 ∈ R
        let r = coven_meyerowitz_report(&z(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(r.r_k, vec![2, 3, 6]);
        assert!(r.t1 && r.t2);
    }

    #[test]
    fn t2_is_vacuous_without_prime_powers() {
        let r = coven_meyerowitz_report(&z(&[0, 1, 3, 5, 6]));
        assert!(r.s_k.is_empty() && r.t2 && !r.t1);
    }

    #[test]
    fn newman_examples() {
        assert!(newman_prime_test(&z(&[0, 1, 2])).unwrap());
        assert!(!newman_prime_test(&z(&[0, 1, 3])).unwrap());
        assert_eq!(newman_exponent(&z(&[0, 3, 6])).unwrap(), Some(1));
        assert_eq!(newman_prime_test(&z(&[0, 1, 2, 3])), Err(ZError::CardinalityNotPrime(4)));
        assert_eq!(newman_prime_test(&z(&[0])), Err(ZError::CardinalityNotPrime(1)));
    }

    #[test]
    fn zn_examples() {
        assert!(is_arithmetic_zn(&z(&[0, 1, 2]), 6).unwrap());
        assert!(!is_arithmetic_zn(&z(&[0, 1, 3]), 12).unwrap());
        assert!(is_arithmetic_zn(&z(&[0, 3, 5, 7, 9]), 12).unwrap());
        assert!(!is_arithmetic_zn(&z(&[0, 3, 5, 7, 9]), 10).unwrap());
        assert_eq!(
            is_arithmetic_zn(&z(&[0, 1, 2]), 3),
            Err(ZError::ModulusTooSmall { n: 3, k: 3 })
        );
    }
}
