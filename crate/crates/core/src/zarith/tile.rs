//! Deciding whether a finite set tiles ℤ by translation.
//!
//! The automaton always covers the least uncovered integer with a translate
//! whose minimum sits there: any other translate covering that integer would
//! have to start further left, on already covered ground. Its state is the
//! coverage pattern of the `diam(K)` positions after the cursor, so the
//! transition function is a partial map on `2^(diam-1)` states. A tiling of
//! ℤ is a bi-infinite orbit, and a finite functional graph has one exactly
//! when it has a cycle; a cycle is a periodic tiling.

use serde::Serialize;

use super::{ZError, ZSet};

/// Sets of larger diameter are refused by [`decide_tile_z`]; the state table
/// has `2^(MAX_AUTOMATON_DIAMETER - 1)` entries.
pub const MAX_AUTOMATON_DIAMETER: u64 = 28;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingCertificate {
    /// Period `n`.
    pub period: u64,
    /// Offsets `C ⊆ [0, n)` with `C ⊕ (K mod n) = ℤ_n`.
    pub offsets: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TileResultZ {
    pub is_tile: bool,
    pub certificate: Option<TilingCertificate>,
    /// For non-tiles: the position where the run started from an uncovered
    /// half-line `[0, ∞)` first places a translate on a covered integer.
    pub failure_witness: Option<u64>,
    pub states_explored: u64,
}

const UNSEEN: u8 = 0;
const ON_PATH: u8 = 1;
const DEAD: u8 = 2;

enum Step {
    Next { state: u64, advance: u64 },
    Collision { offset: u64 },
}

struct Automaton {
    kmask: u64,
}

impl Automaton {
    fn step(&self, state: u64) -> Step {
        let hit = state & self.kmask;
        if hit != 0 {
            return Step::Collision {
                offset: hit.trailing_zeros() as u64,
            };
        }
        let covered = state | self.kmask;
        let advance = covered.trailing_ones() as u64;
        Step::Next {
            state: covered >> advance,
            advance,
        }
    }
}

pub fn decide_tile_z(k: &ZSet) -> Result<TileResultZ, ZError> {
    let d = k.max();
    if d > MAX_AUTOMATON_DIAMETER {
        return Err(ZError::TooLarge(d));
    }
    if d == 0 {
        return Ok(TileResultZ {
            is_tile: true,
            certificate: Some(TilingCertificate {
                period: 1,
                offsets: vec![0],
            }),
            failure_witness: None,
            states_explored: 1,
        });
    }
    let auto = Automaton {
        kmask: k.elements().iter().fold(0u64, |m, &s| m | (1 << s)),
    };
    // States are coverage masks with bit 0 (the cursor) clear and bits up
    // to d-1; index them by mask >> 1.
    let mut status = vec![UNSEEN; 1usize << (d - 1)];
    let mut explored = 0u64;
    let mut failure_witness = None;

    for start in 0..(1u64 << (d - 1)) {
        if status[start as usize] != UNSEEN {
            continue;
        }
        // (state, cursor position) along the current run
        let mut path: Vec<(u64, u64)> = Vec::new();
        let mut state = start << 1;
        let mut pos = 0u64;
        loop {
            let idx = (state >> 1) as usize;
            match status[idx] {
                DEAD => break,
                ON_PATH => {
                    let first = path
                        .iter()
                        .position(|&(s, _)| s == state)
                        .expect("state is on the current path");
                    let cert = certificate_from_cycle(k, &path[first..], pos);
                    return Ok(TileResultZ {
                        is_tile: true,
                        certificate: Some(cert),
                        failure_witness: None,
                        states_explored: explored + path.len() as u64,
                    });
                }
                _ => {}
            }
            status[idx] = ON_PATH;
            path.push((state, pos));
            match auto.step(state) {
                Step::Next { state: s, advance } => {
                    state = s;
                    pos += advance;
                }
                Step::Collision { offset } => {
                    if start == 0 {
                        failure_witness = Some(pos + offset);
                    }
                    break;
                }
            }
        }
        explored += path.len() as u64;
        for (s, _) in path {
            status[(s >> 1) as usize] = DEAD;
        }
    }
    Ok(TileResultZ {
        is_tile: false,
        certificate: None,
        failure_witness,
        states_explored: explored,
    })
}

/// Placements of one cycle give a period `n` (the cursor advance around the
/// cycle) and offsets; the smallest divisor of `n` that still verifies is
/// reported.
fn certificate_from_cycle(k: &ZSet, cycle: &[(u64, u64)], end_pos: u64) -> TilingCertificate {
    let start_pos = cycle[0].1;
    let n = end_pos - start_pos;
    let offsets: Vec<u64> = cycle.iter().map(|&(_, p)| p % n).collect();
    let full = verify_zn_cover(k, n, &offsets).expect("automaton cycle is a tiling of ℤ_n");
    let kl = k.len() as u64;
    for d in crate::intpoly::divisors(n) {
        if d % kl != 0 || d == n {
            continue;
        }
        let mut reduced: Vec<u64> = offsets.iter().map(|c| c % d).collect();
        reduced.sort_unstable();
        reduced.dedup();
        if reduced.len() as u64 * kl == d {
            if let Ok(cert) = verify_zn_cover(k, d, &reduced) {
                return cert;
            }
        }
    }
    full
}

/// Checks that `C ⊕ (K mod n)` is an exact partition of ℤ_n and returns the
/// canonical (sorted) certificate.
pub fn verify_zn_cover(k: &ZSet, n: u64, offsets: &[u64]) -> Result<TilingCertificate, ZError> {
    if n == 0 {
        return Err(ZError::BadCertificate("period must be positive".into()));
    }
    let mut covered = vec![false; n as usize];
    for &c in offsets {
        for &s in k.elements() {
            let r = ((c % n + s % n) % n) as usize;
            if covered[r] {
                return Err(ZError::BadCertificate(format!("residue {r} covered twice")));
            }
            covered[r] = true;
        }
    }
    if let Some(r) = covered.iter().position(|&c| !c) {
        return Err(ZError::BadCertificate(format!("residue {r} not covered")));
    }
    let mut sorted: Vec<u64> = offsets.iter().map(|c| c % n).collect();
    sorted.sort_unstable();
    Ok(TilingCertificate {
        period: n,
        offsets: sorted,
    })
}

/// Exact cover of ℤ_n by translates of `K mod n`, branching on the least
/// uncovered residue. `None` when no cover exists (including when `|K|`
/// does not divide `n`).
pub fn tile_zn_exact_cover(k: &ZSet, n: u64) -> Result<Option<Vec<u64>>, ZError> {
    if n == 0 {
        return Err(ZError::BadModulus(0));
    }
    let mut residues: Vec<u64> = k.elements().iter().map(|s| s % n).collect();
    residues.sort_unstable();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return Err(ZError::BadModulus(n));
    }
    if !n.is_multiple_of(k.len() as u64) {
        return Ok(None);
    }
    let mut covered = vec![false; n as usize];
    let mut chosen = Vec::new();
    if cover_rec(&residues, n, &mut covered, 0, &mut chosen) {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn cover_rec(
    residues: &[u64],
    n: u64,
    covered: &mut [bool],
    from: usize,
    chosen: &mut Vec<u64>,
) -> bool {
    let Some(r) = (from..covered.len()).find(|&i| !covered[i]) else {
        return true;
    };
    let r = r as u64;
    for &s in residues {
        let c = (r + n - s) % n;
        let cells: Vec<usize> = residues.iter().map(|&t| ((c + t) % n) as usize).collect();
        if cells.iter().any(|&i| covered[i]) {
            continue;
        }
        for &i in &cells {
            covered[i] = true;
        }
        chosen.push(c);
        if cover_rec(residues, n, covered, r as usize + 1, chosen) {
            return true;
        }
        chosen.pop();
        for &i in &cells {
            covered[i] = false;
        }
    }
    false
}

/// An `n`-periodic integer solution of `A(K)` over ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicSolution {
    pub period: u64,
    /// `values[g]` for `g ∈ [0, n)`.
    pub values: Vec<i64>,
}

impl PeriodicSolution {
    pub fn value(&self, g: i64) -> i64 {
        self.values[g.rem_euclid(self.period as i64) as usize]
    }

    pub fn window(&self, lo: i64, hi: i64) -> super::SequenceWindow<i64> {
        super::SequenceWindow {
            lo,
            hi,
            values: (lo..=hi).map(|g| self.value(g)).collect(),
        }
    }

    /// Every equation `Σ_i x_{g + s_i} = 0`, one per residue class of `g`.
    pub fn satisfies(&self, k: &ZSet) -> bool {
        (0..self.period as i64).all(|g| {
            k.elements()
                .iter()
                .map(|&s| self.value(g + s as i64))
                .sum::<i64>()
                == 0
        })
    }
}

/// Two-level solution from a tiling: `x_g = |K| − 1` when `−g mod n ∈ C`,
/// `−1` otherwise.
pub fn tiling_to_solution(k: &ZSet, cert: &TilingCertificate) -> Result<PeriodicSolution, ZError> {
    let cert = verify_zn_cover(k, cert.period, &cert.offsets)?;
    let n = cert.period;
    let top = k.len() as i64 - 1;
    let values = (0..n)
        .map(|g| {
            if cert.offsets.binary_search(&((n - g) % n)).is_ok() {
                top
            } else {
                -1
            }
        })
        .collect();
    let sol = PeriodicSolution { period: n, values };
    debug_assert!(sol.satisfies(k));
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zarith::normalize_set;

    fn z(raw: &[i64]) -> ZSet {
        normalize_set(raw).unwrap()
    }

    #[test]
    fn decide_examples() {
        let r = decide_tile_z(&z(&[0, 1, 2])).unwrap();
        assert!(r.is_tile);
        assert_eq!(
            r.certificate,
            Some(TilingCertificate {
                period: 3,
                offsets: vec![0]
            })
        );

        let r = decide_tile_z(&z(&[0, 1, 3])).unwrap();
        assert!(!r.is_tile);
        assert_eq!(r.failure_witness, Some(3));

        let r = decide_tile_z(&z(&[0, 1, 5])).unwrap();
        assert!(r.is_tile);
        let c = r.certificate.unwrap();
        verify_zn_cover(&z(&[0, 1, 5]), c.period, &c.offsets).unwrap();

        assert!(!decide_tile_z(&z(&[0, 2, 3, 5, 6, 8])).unwrap().is_tile);
    }

    #[test]
    fn singleton_and_non_generating() {
        assert!(decide_tile_z(&z(&[4])).unwrap().is_tile);
        let r = decide_tile_z(&z(&[0, 2])).unwrap();
        assert!(r.is_tile);
        assert_eq!(r.certificate.unwrap().period, 4);
        assert!(decide_tile_z(&z(&[0, 1 << 30])).is_err());
    }

    #[test]
    fn x_congruent_two_mod_three() {
        for x in 2..=20 {
            let r = decide_tile_z(&z(&[0, 1, x])).unwrap();
            assert_eq!(r.is_tile, x % 3 == 2, "x = {x}");
        }
    }

    #[test]
    fn zn_cover_examples() {
        assert_eq!(tile_zn_exact_cover(&z(&[0, 1, 2]), 6).unwrap(), Some(vec![0, 3]));
        assert_eq!(tile_zn_exact_cover(&z(&[0, 1, 3]), 6).unwrap(), None);
        assert_eq!(tile_zn_exact_cover(&z(&[0, 2]), 4).unwrap(), Some(vec![0, 1]));
        assert_eq!(tile_zn_exact_cover(&z(&[0, 1, 2]), 7).unwrap(), None);
        assert_eq!(tile_zn_exact_cover(&z(&[0, 3]), 3), Err(ZError::BadModulus(3)));
    }

    #[test]
    fn solutions_from_tilings() {
        let s = tiling_to_solution(
            &z(&[0, 1, 2]),
            &TilingCertificate {
                period: 3,
                offsets: vec![0],
            },
        )
        .unwrap();
        assert_eq!(s.values, vec![2, -1, -1]);
        let s = tiling_to_solution(
            &z(&[0, 2]),
            &TilingCertificate {
                period: 4,
                offsets: vec![0, 1],
            },
        )
        .unwrap();
        assert_eq!(s.values, vec![1, -1, -1, 1]);

        let k = z(&[0, 1, 5]);
        let cert = decide_tile_z(&k).unwrap().certificate.unwrap();
        let s = tiling_to_solution(&k, &cert).unwrap();
        assert!(s.satisfies(&k));
        assert_eq!(s.window(-3, 3).values.len(), 7);

        let bad = TilingCertificate {
            period: 3,
            offsets: vec![0, 1],
        };
        assert!(matches!(
            tiling_to_solution(&z(&[0, 1, 2]), &bad),
            Err(ZError::BadCertificate(_))
        ));
    }
}
