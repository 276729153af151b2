//! Rank consequences of the unoriented skein exact triangle.
//!
//! For a link L and its two resolutions at a crossing, set m to the largest
//! component count. After tensoring each ĤFK with enough copies of the
//! two-dimensional space V to reach m, the three groups fit into an exact
//! triangle over F₂. Exactness of a 3-periodic sequence of finite-dimensional
//! spaces forces each rank to be at most the sum of the other two, and the
//! sum of all three to be even.
//!
//! This module works on ranks alone; the triangle maps themselves are not
//! computed.

use serde::Serialize;
use thiserror::Error;

pub const LIMITATION: &str =
    "rank consequences only: the triangle maps are holomorphic polygon counts and are not computed";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("component counts must be positive")]
    ZeroComponents,
    #[error("component counts {0:?} are not (m-1, m-1, m) in some order")]
    Components([u32; 3]),
    #[error("normalized rank overflows")]
    Overflow,
}

/// Rank of ĤFK together with the number of link components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkRank {
    pub rank: u64,
    pub components: u32,
}

impl LinkRank {
    pub fn new(rank: u64, components: u32) -> Self {
        Self { rank, components }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleRankReport {
    pub m: u32,
    /// rk · 2^{m − l} for L, L₀, L₁.
    pub normalized: [u64; 3],
    /// `normalized[k] <= sum of the other two`, for k = L, L₀, L₁.
    pub inequalities: [bool; 3],
    pub parity_even: bool,
    pub passed: bool,
    pub note: &'static str,
}

pub fn triangle_rank_check(l: LinkRank, l0: LinkRank, l1: LinkRank) -> Result<TriangleRankReport, SkeinError> {
    let all = [l, l0, l1];
    let counts = all.map(|x| x.components);
    if counts.contains(&0) {
        return Err(SkeinError::ZeroComponents);
    }
    let m = *counts.iter().max().expect("three entries");
    let mut sorted = counts;
    sorted.sort_unstable();
    if sorted != [m - 1, m - 1, m] {
        return Err(SkeinError::Components(counts));
    }
    let mut normalized = [0u64; 3];
    for (k, x) in all.iter().enumerate() {
        normalized[k] =
            1u64.checked_shl(m - x.components).and_then(|f| f.checked_mul(x.rank)).ok_or(SkeinError::Overflow)?;
    }
    let total: u128 = normalized.iter().map(|&r| r as u128).sum();
    let inequalities = normalized.map(|r| 2 * r as u128 <= total);
    let parity_even = total.is_multiple_of(2);
    Ok(TriangleRankReport {
        m,
        normalized,
        inequalities,
        parity_even,
        passed: parity_even && inequalities.iter().all(|&b| b),
        note: LIMITATION,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    /// rk = 2^{l−1}·det, which holds for quasi-alternating links.
    pub identity: bool,
    /// rk ≥ 2^{l−1}·det, which holds for every link.
    pub lower_bound: bool,
    pub expected_if_qa: u64,
}

pub fn corollary_check(rank: u64, components: u32, det: u64) -> CorollaryReport {
    let expected = (1u64 << (components.max(1) - 1)) * det;
    CorollaryReport { identity: rank == expected, lower_bound: rank >= expected, expected_if_qa: expected }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(rank: u64, components: u32) -> LinkRank {
        LinkRank::new(rank, components)
    }

    #[test]
    fn trefoil_triangle() {
        let r = triangle_rank_check(lr(3, 1), lr(4, 2), lr(1, 1)).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.normalized, [6, 4, 2]);
        assert!(r.passed);
    }

    #[test]
    fn worked_example_ranks() {
        // unknot, unknot and two-component unlink: three two-dimensional groups
        let r = triangle_rank_check(lr(1, 1), lr(1, 1), lr(2, 2)).unwrap();
        assert_eq!(r.normalized, [2, 2, 2]);
        assert!(r.passed);
    }

    #[test]
    fn zero_ranks_pass_vacuously() {
        let r = triangle_rank_check(lr(0, 1), lr(0, 1), lr(0, 2)).unwrap();
        assert_eq!(r.normalized, [0, 0, 0]);
        assert!(r.passed);
    }

    #[test]
    fn violations_detected() {
        let r = triangle_rank_check(lr(9, 1), lr(1, 1), lr(1, 2)).unwrap();
        assert_eq!(r.inequalities, [false, true, true]);
        assert!(!r.passed);
        let r = triangle_rank_check(lr(3, 1), lr(1, 1), lr(1, 2)).unwrap();
        assert!(!r.parity_even);
        assert!(!r.passed);
    }

    #[test]
    fn component_precondition() {
        assert_eq!(triangle_rank_check(lr(1, 1), lr(1, 1), lr(1, 1)), Err(SkeinError::Components([1, 1, 1])));
        assert_eq!(triangle_rank_check(lr(1, 1), lr(1, 3), lr(1, 2)), Err(SkeinError::Components([1, 3, 2])));
        assert_eq!(triangle_rank_check(lr(1, 0), lr(1, 1), lr(1, 1)), Err(SkeinError::ZeroComponents));
    }

    #[test]
    fn uniform_v_factors_keep_passing() {
        let base = [(lr(3, 1), lr(4, 2), lr(1, 1)), (lr(5, 1), lr(4, 2), lr(3, 1)), (lr(1, 1), lr(1, 1), lr(2, 2))];
        for (a, b, c) in base {
            assert!(triangle_rank_check(a, b, c).unwrap().passed);
            let up = |x: LinkRank| lr(x.rank * 2, x.components + 1);
            assert!(triangle_rank_check(up(a), up(b), up(c)).unwrap().passed);
        }
    }

    #[test]
    fn corollary() {
        assert!(corollary_check(1, 1, 1).identity);
        assert!(corollary_check(5, 1, 5).identity);
        assert!(corollary_check(4, 2, 2).identity);
        let r = corollary_check(5, 1, 3);
        assert!(!r.identity);
        assert!(r.lower_bound);
        assert!(!corollary_check(2, 1, 3).lower_bound);
    }
}
