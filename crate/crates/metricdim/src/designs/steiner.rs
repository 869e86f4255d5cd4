//! Steiner triple systems STS(n) = S(2,3,n), existing exactly for
//! n ≡ 1, 3 (mod 6).
//!
//! Two classical quasigroup constructions cover all admissible orders:
//!
//! - n = 6t+3 (Bose): points Z_{2t+1} x {0,1,2} with the idempotent
//!   commutative quasigroup `i∘j = (i+j)(t+1) mod (2t+1)`.
//! - n = 6t+1 (Skolem): points (Z_{2t} x {0,1,2}) ∪ {∞} with the
//!   half-idempotent commutative quasigroup obtained from addition mod 2t by
//!   relabeling `2x -> x`, `2x+1 -> x+t`.
//!
//! Block counts are n(n-1)/6 in both cases.

use super::{DesignError, IncidenceStructure};
use crate::subsets::KSubset;

/// `true` when an STS(n) exists.
pub fn sts_admissible(n: usize) -> bool {
    n >= 7 && (n % 6 == 1 || n % 6 == 3)
}

/// A Steiner triple system of order n: an S(2,3,n) with n(n-1)/6 blocks.
pub fn steiner_triple_system(n: usize) -> Result<IncidenceStructure, DesignError> {
    if !sts_admissible(n) {
        return Err(DesignError::StsInadmissible { n });
    }
    let blocks = if n % 6 == 3 {
        bose_triples(n)
    } else {
        skolem_triples(n)
    };
    let blocks = blocks
        .into_iter()
        .map(|mut triple| {
            triple.sort_unstable();
            KSubset::new(n, &triple)
        })
        .collect::<Result<Vec<_>, _>>()?;
    IncidenceStructure::new(n, blocks)
}

/// n = 6t+3. Point (i, r) with i in Z_{2t+1}, r in {0,1,2} is numbered
/// r(2t+1) + i + 1.
fn bose_triples(n: usize) -> Vec<[usize; 3]> {
    let t = (n - 3) / 6;
    let m = 2 * t + 1;
    let point = |i: usize, r: usize| r * m + i % m + 1;
    // Idempotent commutative quasigroup on Z_m, m odd: (i+j)/2 via the
    // inverse of 2, which is t+1.
    let op = |i: usize, j: usize| ((i + j) * (t + 1)) % m;
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for i in 0..m {
        blocks.push([point(i, 0), point(i, 1), point(i, 2)]);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            for r in 0..3 {
                blocks.push([point(i, r), point(j, r), point(op(i, j), (r + 1) % 3)]);
            }
        }
    }
    blocks
}

/// n = 6t+1. Point (i, r) with i in Z_{2t}, r in {0,1,2} is numbered
/// r(2t) + i + 1; the extra point ∞ is numbered n.
fn skolem_triples(n: usize) -> Vec<[usize; 3]> {
    let t = (n - 1) / 6;
    let m = 2 * t;
    let point = |i: usize, r: usize| r * m + i % m + 1;
    let infinity = n;
    // Half-idempotent commutative quasigroup: relabel addition mod 2t by
    // σ(2x) = x, σ(2x+1) = x + t. Then i∘i = i for i < t and
    // (t+i)∘(t+i) = i for i < t.
    let sigma = |x: usize| {
        if x.is_multiple_of(2) {
            x / 2
        } else {
            x / 2 + t
        }
    };
    let op = |i: usize, j: usize| sigma((i + j) % m);
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for i in 0..t {
        blocks.push([point(i, 0), point(i, 1), point(i, 2)]);
    }
    for i in 0..t {
        for r in 0..3 {
            blocks.push([infinity, point(t + i, r), point(i, (r + 1) % 3)]);
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            for r in 0..3 {
                blocks.push([point(i, r), point(j, r), point(op(i, j), (r + 1) % 3)]);
            }
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(sts_admissible(7));
        assert!(sts_admissible(9));
        assert!(sts_admissible(13));
        assert!(!sts_admissible(8));
        assert!(!sts_admissible(11));
        assert!(!sts_admissible(3));
        assert!(matches!(
            steiner_triple_system(11),
            Err(DesignError::StsInadmissible { n: 11 })
        ));
    }

    fn assert_is_sts(n: usize) {
        let sts = steiner_triple_system(n).unwrap();
        assert_eq!(sts.n_points(), n);
        assert_eq!(sts.blocks().len(), n * (n - 1) / 6, "block count for n={n}");
        assert!(sts.blocks().iter().all(|b| b.k() == 3));
        // λ = 1: every pair in exactly one block.
        for p in 1..=n {
            for q in (p + 1)..=n {
                let cover = sts
                    .blocks()
                    .iter()
                    .filter(|b| b.contains(p) && b.contains(q))
                    .count();
                assert_eq!(cover, 1, "pair ({p},{q}) in STS({n})");
            }
        }
    }

    #[test]
    fn bose_orders_validate() {
        for n in [9usize, 15, 21, 27] {
            assert_is_sts(n);
        }
    }

    #[test]
    fn skolem_orders_validate() {
        for n in [7usize, 13, 19, 25] {
            assert_is_sts(n);
        }
    }

    #[test]
    fn sts7_block_count_matches_fano_parameters() {
        let sts = steiner_triple_system(7).unwrap();
        assert_eq!(sts.blocks().len(), 7);
    }
}
