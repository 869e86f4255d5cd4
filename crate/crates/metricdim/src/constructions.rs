//! Generic resolving-set constructions.
//!
//! Four partition-style families plus the toroidal-grid paths:
//!
//! - `johnson_partition`: split `{1..n}` into blocks of size k+1, take all
//!   k-subsets of each block minus one; bound `⌊k(n+1)/(k+1)⌋` on `J(n,k)`.
//! - `kneser_partition`: blocks of size 2k-1 (one wrapping block when the
//!   division is inexact); bound `⌈n/(2k-1)⌉(C(2k-1,k)-1)` on `K(n,k)`.
//! - `kneser_diam3`: two overlapping windows for the diameter-3 range
//!   `⌊5k/2⌋ <= n <= 3k-2`; bound `2·C(n-k,k)`.
//! - `matrix_basic`: an explicit size-n set system whose incidence matrix is
//!   invertible with determinant `(-1)^k·k`; bound `n` on `J(n,k)`.
//! - `toroidal_paths`: all `2ab` straight k-vertex paths of the torus
//!   `C_a x C_b`, resolving `K(ab,k)` for k in {4,5,6} at large enough a, b.

use thiserror::Error;

use crate::subsets::{
    binomial, subsets_of_elements, GroundSetPartition, KSubset, SubsetError, CAPACITY,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("requires n >= 2k and k >= 2, got n={n}, k={k}")]
    JohnsonParams { n: usize, k: usize },
    #[error("requires n > 2k and k >= 2, got n={n}, k={k}")]
    KneserParams { n: usize, k: usize },
    #[error("k={k} admits n in {lo}..={hi} (diameter-3 window), got n={n}")]
    Diam3Window {
        n: usize,
        k: usize,
        lo: usize,
        hi: usize,
    },
    #[error("requires n >= k+2 and k >= 2, got n={n}, k={k}")]
    MatrixParams { n: usize, k: usize },
    #[error(
        "straight paths only resolve k in 4..=6 (the pattern breaks down at k >= 7), got k={k}"
    )]
    ToroidalK { k: usize },
    #[error("k={k} needs cycle lengths a,b >= {min}, got a={a}, b={b}")]
    ToroidalSize {
        a: usize,
        b: usize,
        k: usize,
        min: usize,
    },
    #[error("ground set of size {n} exceeds capacity {cap}", cap = CAPACITY)]
    CapacityExceeded { n: usize },
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    JohnsonPartition,
    KneserPartition,
    KneserDiam3,
    MatrixBasic,
    Toroidal { a: usize, b: usize },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::JohnsonPartition => "johnson-partition",
            Method::KneserPartition => "kneser-partition",
            Method::KneserDiam3 => "kneser-diam3",
            Method::MatrixBasic => "matrix-basic",
            Method::Toroidal { .. } => "toroidal",
        }
    }
}

/// What a construction produced and why: bound formula value, the ground-set
/// partition it was built from (when partition-shaped), and the emitted size.
#[derive(Debug, Clone)]
pub struct ConstructionPlan {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub partition: Option<GroundSetPartition>,
    /// The bound formula's value for these parameters.
    pub predicted_size: u64,
    /// Cardinality of the emitted set (after deduplication, where relevant).
    pub actual_size: u64,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub plan: ConstructionPlan,
    pub sets: Vec<KSubset>,
}

/// All k-subsets of `part`, minus the colexicographically least one.
///
/// The underlying argument works with any single subset removed; fixing the
/// colex-least keeps outputs reproducible.
fn part_minus_one(n: usize, part: &KSubset, k: usize) -> Result<Vec<KSubset>, SubsetError> {
    let elems = part.to_vec();
    let mut subs = Vec::new();
    for choice in subsets_of_elements(&elems, k) {
        subs.push(KSubset::new(n, &choice)?);
    }
    // `subsets_of_elements` emits in colex order, so the least is the first.
    Ok(subs.split_off(1))
}

fn contiguous(n: usize, lo: usize, hi: usize) -> Result<KSubset, SubsetError> {
    let elems: Vec<usize> = (lo..=hi).collect();
    KSubset::new(n, &elems)
}

/// Partition construction for `J(n,k)`, size `⌊k(n+1)/(k+1)⌋`.
///
/// Blocks `N_i = {(i-1)(k+1)+1, ..., i(k+1)}` each contribute their k-subsets
/// minus one; when `(k+1) ∤ n`, the leftover tail `{n-j+1..n}` contributes
/// the sets `{1..k-1} ∪ {x}` for `x` in the tail.
pub fn johnson_partition(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if n > CAPACITY {
        return Err(ConstructionError::CapacityExceeded { n });
    }
    if k < 2 || n < 2 * k {
        return Err(ConstructionError::JohnsonParams { n, k });
    }
    let r = n / (k + 1);
    let j = n % (k + 1);
    let mut sets = Vec::new();
    let mut parts = Vec::new();
    for i in 1..=r {
        let part = contiguous(n, (i - 1) * (k + 1) + 1, i * (k + 1))?;
        sets.extend(part_minus_one(n, &part, k)?);
        parts.push(part);
    }
    if j != 0 {
        let tail = contiguous(n, n - j + 1, n)?;
        for x in tail.elements() {
            let mut elems: Vec<usize>;
            if k == 2 && j == 1 {
                // The generic tail {1,x} degenerates at k = 2: it meets every
                // surviving block pair in at most one element, so it cannot
                // separate {3i, n} from {3i-2, 3i-1}. Pairing n with the
                // first block's maximum (which both surviving pairs of that
                // block contain) separates exactly the remaining collisions.
                elems = vec![k + 1, x];
            } else {
                elems = (1..k).collect();
                elems.push(x);
            }
            sets.push(KSubset::new(n, &elems)?);
        }
        parts.push(tail);
    }
    let predicted = (k as u64 * (n as u64 + 1)) / (k as u64 + 1);
    let actual = sets.len() as u64;
    debug_assert_eq!(predicted, actual);
    Ok(Construction {
        plan: ConstructionPlan {
            method: Method::JohnsonPartition,
            n,
            k,
            partition: Some(GroundSetPartition {
                n,
                parts,
                overlapping: false,
            }),
            predicted_size: predicted,
            actual_size: actual,
        },
        sets,
    })
}

/// Partition construction for `K(n,k)`, bound `⌈n/(2k-1)⌉·(C(2k-1,k)-1)`.
///
/// Blocks of size 2k-1 over `{1..n-j}`; when `j != 0` one extra block
/// `{1..2k-j-1} ∪ {n-j+1..n}` wraps around and overlaps the first. Because
/// of that overlap the wrap-around block must remove a *different* subset
/// than the first block did: removing the colex-least from both (they agree
/// on `{1..k}` whenever `j < k`) deletes that vertex from the whole set and
/// leaves the pair `{1..k}` vs `{k+1..2k-1} ∪ {n}` unresolved. The
/// wrap-around block therefore removes its colex-least subset containing
/// `n`, which no other block can also hold. Subsets the overlap region feeds
/// to both blocks are emitted once; the bound counts them with multiplicity,
/// so the emitted size can be below `predicted_size` when `j < k`.
pub fn kneser_partition(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if n > CAPACITY {
        return Err(ConstructionError::CapacityExceeded { n });
    }
    if k < 2 || n <= 2 * k {
        return Err(ConstructionError::KneserParams { n, k });
    }
    let width = 2 * k - 1;
    let r = n / width;
    let j = n % width;
    let mut sets: Vec<KSubset> = Vec::new();
    let mut parts = Vec::new();
    for i in 1..=r {
        let part = contiguous(n, (i - 1) * width + 1, i * width)?;
        sets.extend(part_minus_one(n, &part, k)?);
        parts.push(part);
    }
    if j != 0 {
        let mut elems: Vec<usize> = (1..=(2 * k - j - 1)).collect();
        elems.extend((n - j + 1)..=n);
        let part = KSubset::new(n, &elems)?;
        // Colex-least subset containing n: n plus the k-1 smallest elements.
        let mut removed_elems: Vec<usize> = elems[..k - 1].to_vec();
        removed_elems.push(n);
        let removed = KSubset::new(n, &removed_elems)?;
        for choice in subsets_of_elements(&elems, k) {
            let s = KSubset::new(n, &choice)?;
            if s != removed && !sets.contains(&s) {
                sets.push(s);
            }
        }
        parts.push(part);
    }
    let blocks = n.div_ceil(width) as u64;
    let per_block = binomial(width as u64, k as u64).expect("small binomial") - 1;
    let predicted = blocks * per_block;
    Ok(Construction {
        plan: ConstructionPlan {
            method: Method::KneserPartition,
            n,
            k,
            partition: Some(GroundSetPartition {
                n,
                parts,
                overlapping: j != 0,
            }),
            predicted_size: predicted,
            actual_size: sets.len() as u64,
        },
        sets,
    })
}

/// Diameter-3 construction for `K(n,k)` with `⌊5k/2⌋ <= n <= 3k-2`: all
/// k-subsets of the two overlapping windows `{1..n-k}` and `{k+1..n}`,
/// deduplicated; at most `2·C(n-k,k)` sets.
pub fn kneser_diam3(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if n > CAPACITY {
        return Err(ConstructionError::CapacityExceeded { n });
    }
    let lo = 5 * k / 2;
    let hi = (3 * k).saturating_sub(2);
    if k < 4 || n < lo || n > hi {
        return Err(ConstructionError::Diam3Window { n, k, lo, hi });
    }
    let n1 = contiguous(n, 1, n - k)?;
    let n2 = contiguous(n, k + 1, n)?;
    let mut sets = Vec::new();
    for choice in subsets_of_elements(&n1.to_vec(), k) {
        sets.push(KSubset::new(n, &choice)?);
    }
    // Subsets lying inside both windows would be emitted twice; the window
    // intersection has size n-2k < k so none exist, but dedup regardless.
    for choice in subsets_of_elements(&n2.to_vec(), k) {
        let s = KSubset::new(n, &choice)?;
        if !s.is_subset_of(&n1) {
            sets.push(s);
        }
    }
    let predicted = 2 * binomial((n - k) as u64, k as u64).expect("small binomial");
    Ok(Construction {
        plan: ConstructionPlan {
            method: Method::KneserDiam3,
            n,
            k,
            partition: Some(GroundSetPartition {
                n,
                parts: vec![n1, n2],
                overlapping: true,
            }),
            predicted_size: predicted,
            actual_size: sets.len() as u64,
        },
        sets,
    })
}

/// Explicit size-n resolving set for `J(n,k)`: all k-subsets of `{1..k+1}`
/// followed by `{1..k-1} ∪ {x}` for `x in {k+2..n}`. The emission order makes
/// the incidence matrix block-triangular with determinant `(-1)^k·k`.
pub fn matrix_basic(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if n > CAPACITY {
        return Err(ConstructionError::CapacityExceeded { n });
    }
    if k < 2 || n < k + 2 {
        return Err(ConstructionError::MatrixParams { n, k });
    }
    let mut sets = Vec::new();
    for dropped in 1..=(k + 1) {
        let elems: Vec<usize> = (1..=(k + 1)).filter(|&e| e != dropped).collect();
        sets.push(KSubset::new(n, &elems)?);
    }
    for x in (k + 2)..=n {
        let mut elems: Vec<usize> = (1..k).collect();
        elems.push(x);
        sets.push(KSubset::new(n, &elems)?);
    }
    Ok(Construction {
        plan: ConstructionPlan {
            method: Method::MatrixBasic,
            n,
            k,
            partition: None,
            predicted_size: n as u64,
            actual_size: sets.len() as u64,
        },
        sets,
    })
}

/// Fixes the bijection between torus coordinates and ground-set elements:
/// `(row, col) -> (row-1)·b + col`, rows `1..=a`, columns `1..=b`, both
/// wrapping cyclically in increasing coordinate direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToroidalGroundMap {
    pub a: usize,
    pub b: usize,
}

impl ToroidalGroundMap {
    pub fn n(&self) -> usize {
        self.a * self.b
    }

    pub fn element(&self, row: usize, col: usize) -> usize {
        debug_assert!(row >= 1 && row <= self.a && col >= 1 && col <= self.b);
        (row - 1) * self.b + col
    }

    pub fn coords(&self, element: usize) -> (usize, usize) {
        debug_assert!(element >= 1 && element <= self.n());
        ((element - 1) / self.b + 1, (element - 1) % self.b + 1)
    }
}

#[derive(Debug, Clone)]
pub struct ToroidalConstruction {
    pub map: ToroidalGroundMap,
    pub construction: Construction,
}

fn toroidal_min_side(k: usize) -> Option<usize> {
    match k {
        4 => Some(10),
        5 => Some(13),
        6 => Some(16),
        _ => None,
    }
}

/// All `2ab` straight paths with k vertices in the torus `C_a x C_b`
/// (`ab` horizontal, `ab` vertical), as k-subsets of `{1..ab}`. They resolve
/// `K(ab,k)` for k in {4,5,6} once `a,b` meet the per-k threshold.
pub fn toroidal_paths(
    a: usize,
    b: usize,
    k: usize,
) -> Result<ToroidalConstruction, ConstructionError> {
    let min = toroidal_min_side(k).ok_or(ConstructionError::ToroidalK { k })?;
    if a < min || b < min {
        return Err(ConstructionError::ToroidalSize { a, b, k, min });
    }
    let n = a * b;
    if n > CAPACITY {
        return Err(ConstructionError::CapacityExceeded { n });
    }
    let map = ToroidalGroundMap { a, b };
    let mut sets = Vec::new();
    // Horizontal: fixed row, k cyclically consecutive columns.
    for row in 1..=a {
        for start in 1..=b {
            let elems: Vec<usize> = (0..k)
                .map(|t| map.element(row, (start - 1 + t) % b + 1))
                .collect();
            sets.push(KSubset::new(n, &elems)?);
        }
    }
    // Vertical: fixed column, k cyclically consecutive rows.
    for col in 1..=b {
        for start in 1..=a {
            let elems: Vec<usize> = (0..k)
                .map(|t| map.element((start - 1 + t) % a + 1, col))
                .collect();
            sets.push(KSubset::new(n, &elems)?);
        }
    }
    let predicted = 2 * (a as u64) * (b as u64);
    let actual = sets.len() as u64;
    debug_assert_eq!(predicted, actual);
    Ok(ToroidalConstruction {
        map,
        construction: Construction {
            plan: ConstructionPlan {
                method: Method::Toroidal { a, b },
                n,
                k,
                partition: None,
                predicted_size: predicted,
                actual_size: actual,
            },
            sets,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::GraphInstance;
    use crate::verify::{verify_johnson_by_pairs, verify_resolving, VerifyOptions};

    #[test]
    fn johnson_partition_sizes() {
        let c = johnson_partition(9, 3).unwrap();
        assert_eq!(c.plan.predicted_size, 7);
        assert_eq!(c.sets.len(), 7);
        let c = johnson_partition(8, 4).unwrap();
        assert_eq!(c.plan.predicted_size, 7);
        // 4 sets from the single block, 3 from the tail.
        assert_eq!(c.sets.iter().filter(|s| s.contains(5)).count(), 4);
        assert!(johnson_partition(5, 3).is_err());
        assert!(johnson_partition(9, 1).is_err());
    }

    #[test]
    fn johnson_partition_verifies() {
        for (n, k) in [(8usize, 3usize), (9, 3), (8, 4), (10, 4), (7, 3), (6, 2)] {
            let c = johnson_partition(n, k).unwrap();
            let g = GraphInstance::johnson(n, k).unwrap();
            let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
            assert!(report.resolved, "partition must resolve J({n},{k})");
            let pairs = verify_johnson_by_pairs(n, k, &c.sets).unwrap();
            assert!(pairs.resolved);
        }
    }

    #[test]
    fn johnson_partition_k2_all_residues() {
        // k = 2 needs its own tail when n ≡ 1 (mod 3); check the whole
        // family well past the acceptance range.
        for n in 4..=40usize {
            let c = johnson_partition(n, 2).unwrap();
            assert_eq!(c.sets.len() as u64, 2 * (n as u64 + 1) / 3);
            let g = GraphInstance::johnson(n, 2).unwrap();
            let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
            assert!(report.resolved, "k=2 partition must resolve J({n},2)");
        }
    }

    #[test]
    fn johnson_partition_structure() {
        let c = johnson_partition(9, 3).unwrap();
        let partition = c.plan.partition.unwrap();
        assert!(partition.is_exact_partition());
        assert_eq!(partition.parts.len(), 3); // two blocks plus the tail
                                              // Removed set per block is the colex-least: {1,2,3} and {5,6,7}.
        assert!(!c.sets.contains(&KSubset::new(9, &[1, 2, 3]).unwrap()));
        assert!(!c.sets.contains(&KSubset::new(9, &[5, 6, 7]).unwrap()));
    }

    #[test]
    fn kneser_partition_sizes() {
        assert_eq!(kneser_partition(7, 3).unwrap().plan.predicted_size, 18);
        assert_eq!(kneser_partition(7, 3).unwrap().plan.actual_size, 18);
        assert_eq!(kneser_partition(11, 2).unwrap().plan.predicted_size, 8);
        assert_eq!(kneser_partition(11, 2).unwrap().plan.actual_size, 8);
        assert!(kneser_partition(6, 3).is_err());
    }

    #[test]
    fn kneser_partition_overlap_dedup() {
        // K(11,5): the wrap-around block shares the window {1..7} with the
        // first block, so C(7,5)-1 of its survivors are duplicates.
        let c = kneser_partition(11, 5).unwrap();
        assert_eq!(c.plan.predicted_size, 250);
        assert_eq!(c.plan.actual_size, 250 - 20);
        let mut dedup = c.sets.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), c.sets.len(), "no duplicate landmarks emitted");
    }

    #[test]
    fn kneser_partition_verifies() {
        for (n, k) in [(7usize, 3usize), (9, 3), (11, 2), (9, 2), (11, 3), (11, 5)] {
            let c = kneser_partition(n, k).unwrap();
            let g = GraphInstance::kneser(n, k).unwrap();
            let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
            assert!(report.resolved, "partition must resolve K({n},{k})");
        }
    }

    #[test]
    fn kneser_partition_j1_instances_verify() {
        // n ≡ 1 (mod 2k-1) is the regime where the wrap-around block's
        // removal choice matters; sweep it well past the acceptance range.
        for (n, k) in [
            (7usize, 2usize),
            (10, 2),
            (13, 2),
            (16, 2),
            (19, 2),
            (11, 3),
            (16, 3),
            (21, 3),
            (15, 4),
            (19, 5),
        ] {
            let c = kneser_partition(n, k).unwrap();
            let g = GraphInstance::kneser(n, k).unwrap();
            let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
            assert!(report.resolved, "partition must resolve K({n},{k})");
        }
    }

    #[test]
    fn kneser_partition_wraparound_block() {
        let c = kneser_partition(7, 3).unwrap();
        let partition = c.plan.partition.unwrap();
        assert!(partition.overlapping);
        assert_eq!(partition.parts[1].to_vec(), vec![1, 2, 3, 6, 7]);
    }

    #[test]
    fn diam3_window_and_sizes() {
        let c = kneser_diam3(10, 4).unwrap();
        assert_eq!(c.plan.predicted_size, 30);
        assert_eq!(c.plan.actual_size, 30);
        assert!(kneser_diam3(13, 5).is_ok());
        assert!(kneser_diam3(14, 5).is_err());
        assert!(kneser_diam3(11, 4).is_err());
        assert!(kneser_diam3(9, 3).is_err());
    }

    #[test]
    fn diam3_verifies_on_k_10_4() {
        let c = kneser_diam3(10, 4).unwrap();
        let g = GraphInstance::kneser(10, 4).unwrap();
        let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
        assert!(report.resolved);
    }

    #[test]
    fn matrix_basic_shape() {
        let c = matrix_basic(9, 3).unwrap();
        assert_eq!(c.sets.len(), 9);
        let as_vecs: Vec<Vec<usize>> = c.sets.iter().map(|s| s.to_vec()).collect();
        // First block: the four 3-subsets of {1,2,3,4}; then {1,2,x}.
        assert_eq!(as_vecs[0], vec![2, 3, 4]);
        assert_eq!(as_vecs[3], vec![1, 2, 3]);
        assert_eq!(as_vecs[4], vec![1, 2, 5]);
        assert_eq!(as_vecs[8], vec![1, 2, 9]);
        assert!(matrix_basic(4, 3).is_err());
    }

    #[test]
    fn matrix_basic_verifies() {
        for (n, k) in [(9usize, 3usize), (10, 4), (6, 2)] {
            let c = matrix_basic(n, k).unwrap();
            let g = GraphInstance::johnson(n, k).unwrap();
            let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
            assert!(report.resolved, "matrix set must resolve J({n},{k})");
        }
    }

    #[test]
    fn toroidal_counts_and_thresholds() {
        let t = toroidal_paths(10, 10, 4).unwrap();
        assert_eq!(t.construction.sets.len(), 200);
        assert_eq!(t.construction.plan.n, 100);
        let t = toroidal_paths(13, 13, 5).unwrap();
        assert_eq!(t.construction.sets.len(), 338);
        assert!(toroidal_paths(9, 10, 4).is_err());
        assert!(toroidal_paths(10, 10, 7).is_err());
        assert!(toroidal_paths(16, 17, 6).is_err()); // 272 > capacity
    }

    #[test]
    fn toroidal_ground_map_roundtrip() {
        let map = ToroidalGroundMap { a: 10, b: 12 };
        for e in 1..=map.n() {
            let (r, c) = map.coords(e);
            assert_eq!(map.element(r, c), e);
        }
        assert_eq!(map.element(1, 1), 1);
        assert_eq!(map.element(2, 1), 13);
    }

    #[test]
    fn toroidal_paths_wrap() {
        let t = toroidal_paths(10, 10, 4).unwrap();
        // The horizontal path starting at column 9 of row 1 wraps to column 2.
        let wrapped = KSubset::new(100, &[9, 10, 1, 2]).unwrap();
        assert!(t.construction.sets.contains(&wrapped));
        // Vertical wrap in column 1: rows 9,10,1,2.
        let vwrap = KSubset::new(100, &[81, 91, 1, 11]).unwrap();
        assert!(t.construction.sets.contains(&vwrap));
    }

    #[test]
    fn constructions_are_deterministic() {
        let a = johnson_partition(10, 3).unwrap();
        let b = johnson_partition(10, 3).unwrap();
        assert_eq!(a.sets, b.sets);
        let a = toroidal_paths(10, 10, 4).unwrap();
        let b = toroidal_paths(10, 10, 4).unwrap();
        assert_eq!(a.construction.sets, b.construction.sets);
    }
}
