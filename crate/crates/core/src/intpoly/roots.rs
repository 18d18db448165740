//! Floating-point root approximation.
//!
//! Roots are computed per factor of the exact squarefree decomposition, so
//! the iteration only ever sees simple roots and multiplicities come from
//! exact arithmetic rather than from cluster guessing.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{IntPoly, PolyError};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Roots closer than `CLUSTER_FACTOR · tol` are merged into one cluster.
pub const CLUSTER_FACTOR: f64 = 1e3;
const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxRoot {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub multiplicity: usize,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// All complex roots of `p`, with multiplicities, sorted by real then
/// imaginary part. Deterministic for a given `p` and `tol`.
pub fn numeric_roots(p: &IntPoly, tol: f64) -> Result<Vec<ApproxRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (zeros, rest) = p.split_x_power();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(ApproxRoot {
            value: Complex64::new(0.0, 0.0),
            multiplicity: zeros,
        });
    }
    for (factor, mult) in rest.squarefree_decomposition() {
        for z in simple_roots(&factor.to_f64_coeffs(), tol)? {
            roots.push(ApproxRoot {
                value: z,
                multiplicity: mult,
            });
        }
    }
    let mut merged = merge_clusters(roots, CLUSTER_FACTOR * tol);
    merged.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(merged)
}

fn merge_clusters(roots: Vec<ApproxRoot>, radius: f64) -> Vec<ApproxRoot> {
    let mut out: Vec<ApproxRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match out
            .iter_mut()
            .find(|o| (o.value - r.value).norm() <= radius)
        {
            Some(o) => {
                let total = (o.multiplicity + r.multiplicity) as f64;
                o.value = (o.value * o.multiplicity as f64 + r.value * r.multiplicity as f64) / total;
                o.multiplicity += r.multiplicity;
            }
            None => out.push(r),
        }
    }
    out
}

/// Value and derivative of the polynomial at `z` plus a rounding-error bound
/// for the value.
fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let az = z.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + c.abs();
    }
    (p, dp, bound * f64::EPSILON * 8.0)
}

/// Aberth–Ehrlich iteration on a polynomial with simple roots.
fn simple_roots(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>, PolyError> {
    let n = coeffs.len() - 1;
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]),
        _ => {}
    }
    // Initial guesses on a circle of the geometric-mean radius, rotated off
    // the real axis so conjugate pairs are not started symmetric.
    let radius = (coeffs[0].abs() / coeffs[n].abs()).powf(1.0 / n as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, err) = horner(coeffs, z[i]);
            if p.norm() <= err {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            if step.norm() <= tol * z[i].norm().max(1.0) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done && done.iter().all(|&d| d) {
            return Ok(z.into_iter().map(|r| polish(coeffs, r)).collect());
        }
    }
    Err(PolyError::NonConvergence(MAX_ITERATIONS))
}

fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp, err) = horner(coeffs, z);
        if p.norm() <= err || dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
    }
    // Snap imaginary parts that are pure rounding noise.
    if z.im.abs() <= 1e-14 * z.norm().max(1.0) {
        z.im = 0.0;
    }
    z
}
