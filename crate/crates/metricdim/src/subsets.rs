//! k-subsets of `{1..n}` as fixed-capacity bit vectors, with colexicographic
//! enumeration, ranking and unranking.
//!
//! Every other module works over these: graph vertices, landmarks, design
//! blocks and partition parts are all `KSubset` values.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Number of 64-bit words backing a subset.
const WORDS: usize = 4;

/// Largest admissible ground-set size. Chosen so the toroidal-grid
/// constructions (ground sets up to 16 x 16 = 256) fit in flat bit vectors.
pub const CAPACITY: usize = WORDS * 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("ground-set size {n} exceeds capacity {CAPACITY}")]
    CapacityExceeded { n: usize },
    #[error("subset size {k} exceeds ground-set size {n}")]
    SizeExceedsGroundSet { k: usize, n: usize },
    #[error("element {element} outside ground set 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("token {token:?} is not a ground-set element")]
    BadToken { token: String },
    #[error("duplicate element {element}")]
    DuplicateElement { element: usize },
    #[error("ground-set mismatch: {left} vs {right}")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("rank {rank} out of range for C({n},{k})")]
    RankOutOfRange { rank: u64, n: usize, k: usize },
    #[error("C({n},{k}) does not fit in 64 bits")]
    CountOverflow { n: usize, k: usize },
}

/// Binomial coefficient `C(n,k)`, or `None` if the value overflows `u64`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul((n - k + i) as u128)? / i as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// A subset of `{1..n}` stored as a bit vector; element `e` occupies bit `e-1`.
///
/// Equality is bitwise. The `Ord` impl compares the bit vectors as wide
/// integers, which on subsets of equal size is exactly colexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    words: [u64; WORDS],
    n: u16,
    k: u16,
}

impl KSubset {
    /// Empty subset of `{1..n}`.
    pub fn empty(n: usize) -> Result<Self, SubsetError> {
        if n > CAPACITY {
            return Err(SubsetError::CapacityExceeded { n });
        }
        Ok(KSubset {
            words: [0; WORDS],
            n: n as u16,
            k: 0,
        })
    }

    /// Subset of `{1..n}` from a list of 1-based elements.
    pub fn new(n: usize, elements: &[usize]) -> Result<Self, SubsetError> {
        let mut s = Self::empty(n)?;
        for &e in elements {
            s.insert(e)?;
        }
        Ok(s)
    }

    /// Adds element `e`; errors on out-of-range or duplicate elements.
    pub fn insert(&mut self, e: usize) -> Result<(), SubsetError> {
        if e == 0 || e > self.n as usize {
            return Err(SubsetError::ElementOutOfRange {
                element: e,
                n: self.n as usize,
            });
        }
        let (w, b) = ((e - 1) / 64, (e - 1) % 64);
        if self.words[w] >> b & 1 == 1 {
            return Err(SubsetError::DuplicateElement { element: e });
        }
        self.words[w] |= 1 << b;
        self.k += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of elements (popcount of the bit vector).
    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.n as usize && self.words[(e - 1) / 64] >> ((e - 1) % 64) & 1 == 1
    }

    /// Iterates elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter { word }.map(move |b| w * 64 + b + 1))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    /// `|self ∩ other|`; errors when the two subsets live over different
    /// ground sets.
    pub fn intersection_size(&self, other: &KSubset) -> Result<usize, SubsetError> {
        if self.n != other.n {
            return Err(SubsetError::GroundSetMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        Ok(isect(self, other))
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `true` when every element of `self` is in `other`.
    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Complement within `{1..n}`.
    pub fn complement(&self) -> KSubset {
        let mut words = [0u64; WORDS];
        let n = self.n as usize;
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if lo >= n {
                break;
            }
            let bits = (n - lo).min(64);
            let mask = if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            };
            *word = !self.words[w] & mask;
        }
        KSubset {
            words,
            n: self.n,
            k: self.n - self.k,
        }
    }

    pub fn union(&self, other: &KSubset) -> Result<KSubset, SubsetError> {
        if self.n != other.n {
            return Err(SubsetError::GroundSetMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        let mut words = [0u64; WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            *word = self.words[w] | other.words[w];
        }
        let k = words.iter().map(|w| w.count_ones() as u16).sum();
        Ok(KSubset {
            words,
            n: self.n,
            k,
        })
    }

    /// Colexicographic rank among all subsets of size `k()`; errors only when
    /// some intermediate binomial overflows 64 bits.
    pub fn rank_colex(&self) -> Result<u64, SubsetError> {
        let mut rank: u64 = 0;
        for (i, e) in self.elements().enumerate() {
            let c = binomial((e - 1) as u64, (i + 1) as u64)
                .ok_or(SubsetError::CountOverflow { n: e - 1, k: i + 1 })?;
            rank = rank
                .checked_add(c)
                .ok_or(SubsetError::CountOverflow { n: e - 1, k: i + 1 })?;
        }
        Ok(rank)
    }

    /// Inverse of [`rank_colex`](Self::rank_colex): the `rank`-th `k`-subset
    /// of `{1..n}` in colexicographic order.
    pub fn unrank_colex(n: usize, k: usize, rank: u64) -> Result<Self, SubsetError> {
        if n > CAPACITY {
            return Err(SubsetError::CapacityExceeded { n });
        }
        if k > n {
            return Err(SubsetError::SizeExceedsGroundSet { k, n });
        }
        let total = binomial(n as u64, k as u64).ok_or(SubsetError::CountOverflow { n, k })?;
        if rank >= total {
            return Err(SubsetError::RankOutOfRange { rank, n, k });
        }
        let mut s = Self::empty(n)?;
        let mut r = rank;
        let mut upper = n as u64;
        // Greedy from the largest element down: the i-th largest element is
        // the largest c with C(c-1, i) <= remaining rank.
        for i in (1..=k as u64).rev() {
            let mut c = upper;
            loop {
                let below = binomial(c - 1, i).ok_or(SubsetError::CountOverflow {
                    n: (c - 1) as usize,
                    k: i as usize,
                })?;
                if below <= r {
                    r -= below;
                    break;
                }
                c -= 1;
            }
            s.insert(c as usize)?;
            upper = c - 1;
        }
        Ok(s)
    }

    /// Colexicographic successor among `k`-subsets of the same ground set, or
    /// `None` when `self` is the colex maximum.
    pub fn next_colex(&self) -> Option<KSubset> {
        let elems = self.to_vec();
        let k = elems.len();
        let n = self.n as usize;
        if k == 0 {
            return None;
        }
        for i in 0..k {
            let bound = if i + 1 < k { elems[i + 1] } else { n + 1 };
            if elems[i] + 1 < bound {
                // Bump position i, reset everything below it to 1..=i.
                let mut next = Self::empty(n).expect("capacity already validated");
                for e in 1..=i {
                    next.insert(e).expect("fresh small elements");
                }
                next.insert(elems[i] + 1).expect("within bound");
                for &e in &elems[i + 1..] {
                    next.insert(e).expect("unchanged tail");
                }
                return Some(next);
            }
        }
        None
    }
}

/// Intersection size without the ground-set check; callers must have
/// validated that both subsets share one ground set.
pub(crate) fn isect(a: &KSubset, b: &KSubset) -> usize {
    let mut c = 0u32;
    for w in 0..WORDS {
        c += (a.words[w] & b.words[w]).count_ones();
    }
    c as usize
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        for w in (0..WORDS).rev() {
            match self.words[w].cmp(&other.words[w]) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text form: sorted space-separated 1-based elements, e.g. `1 2 5 7`.
impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}/{}", self, self.n)
    }
}

impl serde::Serialize for KSubset {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("KSubset", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("elements", &self.to_vec())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for KSubset {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            n: usize,
            elements: Vec<usize>,
        }
        let raw = Raw::deserialize(de)?;
        KSubset::new(raw.n, &raw.elements).map_err(serde::de::Error::custom)
    }
}

impl KSubset {
    /// Parses the text form against a known ground-set size.
    pub fn parse_with_n(n: usize, line: &str) -> Result<Self, SubsetError> {
        let mut s = Self::empty(n)?;
        for tok in line.split_whitespace() {
            let e = usize::from_str(tok).map_err(|_| SubsetError::BadToken {
                token: tok.to_string(),
            })?;
            s.insert(e)?;
        }
        Ok(s)
    }
}

/// Streams all `k`-subsets of `{1..n}` in colexicographic order.
///
/// Streams are restartable from any rank via [`from_rank`](Self::from_rank),
/// so consumers may split the full range into contiguous rank windows.
pub struct ColexSubsets {
    next: Option<KSubset>,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Result<Self, SubsetError> {
        if n > CAPACITY {
            return Err(SubsetError::CapacityExceeded { n });
        }
        if k > n {
            return Err(SubsetError::SizeExceedsGroundSet { k, n });
        }
        let first: Vec<usize> = (1..=k).collect();
        Ok(ColexSubsets {
            next: Some(KSubset::new(n, &first)?),
        })
    }

    /// Starts the stream at the subset of the given colex rank.
    pub fn from_rank(n: usize, k: usize, rank: u64) -> Result<Self, SubsetError> {
        Ok(ColexSubsets {
            next: Some(KSubset::unrank_colex(n, k, rank)?),
        })
    }
}

impl Iterator for ColexSubsets {
    type Item = KSubset;
    fn next(&mut self) -> Option<KSubset> {
        let current = self.next.take()?;
        self.next = current.next_colex();
        Some(current)
    }
}

/// All `k`-subsets of `{1..n}` in colexicographic order.
pub fn enumerate_k_subsets(n: usize, k: usize) -> Result<ColexSubsets, SubsetError> {
    ColexSubsets::new(n, k)
}

/// All size-`m` subsets of an explicit element list (ascending input order
/// assumed), emitted in colexicographic order over the chosen elements.
pub fn subsets_of_elements(elements: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > elements.len() {
        return out;
    }
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.iter().map(|&i| elements[i]).collect());
        // Colex successor on index vectors.
        let mut i = 0;
        loop {
            let bound = if i + 1 < m {
                idx[i + 1]
            } else {
                elements.len()
            };
            if idx[i] + 1 < bound {
                idx[i] += 1;
                for (j, slot) in idx.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
            if i == m {
                return out;
            }
        }
    }
}

/// An ordered list of subsets of `{1..n}` used by the partition-style
/// constructions. `overlapping` records whether a construction deliberately
/// reuses ground-set elements across parts.
#[derive(Debug, Clone)]
pub struct GroundSetPartition {
    pub n: usize,
    pub parts: Vec<KSubset>,
    pub overlapping: bool,
}

impl GroundSetPartition {
    /// `true` when the parts are pairwise disjoint and cover `{1..n}`.
    pub fn is_exact_partition(&self) -> bool {
        let mut seen = match KSubset::empty(self.n) {
            Ok(s) => s,
            Err(_) => return false,
        };
        for part in &self.parts {
            if part.n() != self.n || !seen.is_disjoint(part) {
                return false;
            }
            seen = match seen.union(part) {
                Ok(u) => u,
                Err(_) => return false,
            };
        }
        seen.k() == self.n
    }
}
