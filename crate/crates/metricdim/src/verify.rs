//! Resolving-set verification.
//!
//! A candidate set resolves a graph exactly when the signature map
//! `vertex -> (d(vertex, X))_{X in S}` is injective. Verification streams all
//! `C(n,k)` vertices, computes signatures, and reports either success or a
//! deterministic witness pair sharing a signature.
//!
//! Diameter-2 Kneser instances get a packed fast path: there the distance to
//! a landmark is 1 or 2 according to disjointness, so a signature packs to
//! one bit per landmark. That is what makes exhaustive verification over
//! `C(100,4) = 3,921,225` vertices practical.

use std::collections::HashSet;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{bfs_distances_from, Family, GraphError, GraphInstance, BFS_ORACLE_LIMIT};
use crate::subsets::{isect, KSubset, SubsetError};

/// Default vertex budget for formula-oracle verification.
pub const FORMULA_BUDGET: u64 = 1 << 23;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("landmark {index} is not a vertex of the instance: {reason}")]
    InvalidLandmark { index: usize, reason: String },
    #[error("instance has {vertices} vertices, above the verification budget {budget}")]
    BudgetExceeded { vertices: u64, budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// Which distance oracle scores signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Formula,
    Bfs,
}

impl Oracle {
    pub fn as_str(&self) -> &'static str {
        match self {
            Oracle::Formula => "formula",
            Oracle::Bfs => "bfs",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub oracle: Oracle,
    /// Max admissible `C(n,k)`; `None` picks the oracle default
    /// ([`FORMULA_BUDGET`] or [`BFS_ORACLE_LIMIT`]).
    pub budget: Option<u64>,
    /// Worker threads; 0 picks a machine default. The report is identical for
    /// every worker count.
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle: Oracle::Formula,
            budget: None,
            workers: 0,
        }
    }
}

impl VerifyOptions {
    pub fn with_oracle(oracle: Oracle) -> Self {
        VerifyOptions {
            oracle,
            ..Default::default()
        }
    }

    fn effective_budget(&self) -> u64 {
        self.budget.unwrap_or(match self.oracle {
            Oracle::Formula => FORMULA_BUDGET,
            Oracle::Bfs => BFS_ORACLE_LIMIT,
        })
    }

    fn effective_workers(&self) -> usize {
        if self.workers > 0 {
            return self.workers;
        }
        thread::available_parallelism()
            .map(|p| p.get().min(8))
            .unwrap_or(1)
    }
}

/// How a witness pair was certified unresolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Two distinct vertices with equal distance vectors to every landmark.
    SignatureCollision,
    /// Two disjoint equal-size sets `U`, `W` with `|X ∩ U| = |X ∩ W|` for
    /// every landmark `X` (the Johnson pairwise criterion).
    DisjointPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: KSubset,
    pub w: KSubset,
    pub kind: WitnessKind,
}

/// Outcome of a resolving-set check. `resolved` holds exactly when no witness
/// exists; any reported witness re-checks: its two sets genuinely share a
/// signature (or intersection pattern, for the pairwise criterion).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub resolved: bool,
    pub witness: Option<Witness>,
    pub landmarks_used: usize,
    /// Vertices scanned, or examined pairs for the pairwise criterion.
    pub vertices_checked: u64,
    pub oracle: Oracle,
}

impl VerificationReport {
    /// Structured-text record: one `key=value` per line.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("resolved={}\n", self.resolved));
        out.push_str(&format!("family={}\n", self.family));
        out.push_str(&format!("n={}\n", self.n));
        out.push_str(&format!("k={}\n", self.k));
        out.push_str(&format!("landmarks={}\n", self.landmarks_used));
        out.push_str(&format!("vertices_checked={}\n", self.vertices_checked));
        out.push_str(&format!("oracle={}\n", self.oracle.as_str()));
        if let Some(wit) = &self.witness {
            out.push_str(&format!("witness_u={}\n", wit.u));
            out.push_str(&format!("witness_w={}\n", wit.w));
            out.push_str(&format!(
                "witness_kind={}\n",
                match wit.kind {
                    WitnessKind::SignatureCollision => "signature-collision",
                    WitnessKind::DisjointPair => "disjoint-pair",
                }
            ));
        }
        out
    }

    /// Parses the `key=value` record form.
    pub fn parse_kv(text: &str) -> Result<Self, FileFormatError> {
        let mut map = std::collections::HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(FileFormatError::Malformed {
                line: lineno + 1,
                reason: "expected key=value".into(),
            })?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        let get = |key: &str| {
            map.get(key).cloned().ok_or(FileFormatError::MissingField {
                field: key.to_string(),
            })
        };
        let n: usize = get("n")?.parse().map_err(|_| FileFormatError::Malformed {
            line: 0,
            reason: "bad n".into(),
        })?;
        let parse_subset = |text: &str| {
            KSubset::parse_with_n(n, text).map_err(|e| FileFormatError::Malformed {
                line: 0,
                reason: e.to_string(),
            })
        };
        let witness = match (map.get("witness_u"), map.get("witness_w")) {
            (Some(u), Some(w)) => Some(Witness {
                u: parse_subset(u)?,
                w: parse_subset(w)?,
                kind: match map.get("witness_kind").map(|s| s.as_str()) {
                    Some("disjoint-pair") => WitnessKind::DisjointPair,
                    _ => WitnessKind::SignatureCollision,
                },
            }),
            _ => None,
        };
        Ok(VerificationReport {
            family: Family::parse(&get("family")?).ok_or(FileFormatError::MissingField {
                field: "family".into(),
            })?,
            n,
            k: get("k")?.parse().map_err(|_| FileFormatError::Malformed {
                line: 0,
                reason: "bad k".into(),
            })?,
            resolved: get("resolved")? == "true",
            witness,
            landmarks_used: get("landmarks")?.parse().unwrap_or(0),
            vertices_checked: get("vertices_checked")?.parse().unwrap_or(0),
            oracle: if get("oracle")? == "bfs" {
                Oracle::Bfs
            } else {
                Oracle::Formula
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn validate_landmarks(g: &GraphInstance, landmarks: &[KSubset]) -> Result<(), VerifyError> {
    for (index, x) in landmarks.iter().enumerate() {
        if x.n() != g.n() {
            return Err(VerifyError::InvalidLandmark {
                index,
                reason: format!("ground set {} vs instance {}", x.n(), g.n()),
            });
        }
        if x.k() != g.k() {
            return Err(VerifyError::InvalidLandmark {
                index,
                reason: format!("size {} vs instance k={}", x.k(), g.k()),
            });
        }
    }
    Ok(())
}

/// Splits `0..total` into at most `workers` contiguous rank ranges.
fn rank_ranges(total: u64, workers: usize) -> Vec<(u64, u64)> {
    let workers = workers.max(1) as u64;
    let chunk = total.div_ceil(workers).max(1);
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        ranges.push((start, end));
        start = end;
    }
    ranges
}

/// Decides whether `landmarks` resolves `g`, scanning every vertex.
///
/// On failure the witness is the colliding pair with the colex-least first
/// vertex, then colex-least second. Identical inputs give identical reports
/// regardless of worker count.
pub fn verify_resolving(
    g: &GraphInstance,
    landmarks: &[KSubset],
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    validate_landmarks(g, landmarks)?;
    let budget = opts.effective_budget();
    let vertices = g.vertex_count().ok_or(VerifyError::BudgetExceeded {
        vertices: u64::MAX,
        budget,
    })?;
    if vertices > budget || vertices > u32::MAX as u64 {
        return Err(VerifyError::BudgetExceeded { vertices, budget });
    }

    let packed =
        opts.oracle == Oracle::Formula && g.family() == Family::Kneser && g.diameter() == 2;
    let witness_pair = if packed {
        packed_scan(g, landmarks, opts)?
    } else {
        general_scan(g, landmarks, opts)?
    };

    let witness = match witness_pair {
        None => None,
        Some((ru, rw)) => {
            let u = KSubset::unrank_colex(g.n(), g.k(), ru as u64)?;
            let w = KSubset::unrank_colex(g.n(), g.k(), rw as u64)?;
            debug_assert_eq!(
                exact_signature(g, &u, landmarks, opts)?,
                exact_signature(g, &w, landmarks, opts)?,
                "witness must share a signature"
            );
            Some(Witness {
                u,
                w,
                kind: WitnessKind::SignatureCollision,
            })
        }
    };

    Ok(VerificationReport {
        family: g.family(),
        n: g.n(),
        k: g.k(),
        resolved: witness.is_none(),
        witness,
        landmarks_used: landmarks.len(),
        vertices_checked: vertices,
        oracle: opts.oracle,
    })
}

/// The exact distance vector of `v` to every landmark.
pub fn exact_signature(
    g: &GraphInstance,
    v: &KSubset,
    landmarks: &[KSubset],
    opts: &VerifyOptions,
) -> Result<Vec<u32>, VerifyError> {
    match opts.oracle {
        Oracle::Formula => Ok(landmarks
            .iter()
            .map(|x| g.distance_by_intersection(isect(v, x)) as u32)
            .collect()),
        Oracle::Bfs => {
            let budget = opts.effective_budget();
            let rank = v.rank_colex()? as usize;
            landmarks
                .iter()
                .map(|x| {
                    bfs_distances_from(g, x, budget)
                        .map(|d| d[rank])
                        .map_err(VerifyError::from)
                })
                .collect()
        }
    }
}

/// Distance lookup by intersection size; entry `s = k` covers equal vertices
/// (distance 0) since distinct k-subsets cannot intersect in k elements.
fn distance_table(g: &GraphInstance) -> Vec<u8> {
    (0..=g.k())
        .map(|s| {
            let d = g.distance_by_intersection(s);
            u8::try_from(d).expect("diameter fits in u8")
        })
        .collect()
}

/// General path: one byte per landmark per vertex, sorted collision scan.
fn general_scan(
    g: &GraphInstance,
    landmarks: &[KSubset],
    opts: &VerifyOptions,
) -> Result<Option<(u32, u32)>, VerifyError> {
    let vertices = g.vertex_count().expect("bounded by budget") as usize;
    let lmk = landmarks.len();
    if vertices < 2 {
        return Ok(None);
    }

    // With the BFS oracle, one search per landmark yields the whole column of
    // the signature table.
    let bfs_columns: Option<Vec<Vec<u32>>> = match opts.oracle {
        Oracle::Formula => None,
        Oracle::Bfs => {
            let budget = opts.effective_budget();
            let mut cols = Vec::with_capacity(lmk);
            for x in landmarks {
                cols.push(bfs_distances_from(g, x, budget)?);
            }
            Some(cols)
        }
    };

    let table = distance_table(g);
    let mut flat = vec![0u8; vertices * lmk];
    let ranges = rank_ranges(vertices as u64, opts.effective_workers());
    thread::scope(|scope| -> Result<(), VerifyError> {
        let mut rest: &mut [u8] = &mut flat;
        let mut handles = Vec::new();
        for &(start, end) in &ranges {
            let span = (end - start) as usize * lmk;
            let (chunk, tail) = std::mem::take(&mut rest).split_at_mut(span);
            rest = tail;
            let table = &table;
            let bfs_columns = &bfs_columns;
            handles.push(scope.spawn(move || -> Result<(), VerifyError> {
                let mut vertex = KSubset::unrank_colex(g.n(), g.k(), start)?;
                for local in 0..(end - start) as usize {
                    let row = &mut chunk[local * lmk..(local + 1) * lmk];
                    match bfs_columns {
                        Some(cols) => {
                            let rank = start as usize + local;
                            for (cell, col) in row.iter_mut().zip(cols) {
                                *cell = u8::try_from(col[rank]).expect("diameter fits in u8");
                            }
                        }
                        None => {
                            for (cell, x) in row.iter_mut().zip(landmarks) {
                                *cell = table[isect(&vertex, x)];
                            }
                        }
                    }
                    if local + 1 < (end - start) as usize {
                        vertex = vertex.next_colex().expect("within vertex count");
                    }
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join().expect("verification worker panicked")?;
        }
        Ok(())
    })?;

    let mut order: Vec<u32> = (0..vertices as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let sa = &flat[a as usize * lmk..(a as usize + 1) * lmk];
        let sb = &flat[b as usize * lmk..(b as usize + 1) * lmk];
        sa.cmp(sb).then(a.cmp(&b))
    });

    let mut best: Option<(u32, u32)> = None;
    let mut i = 0;
    while i + 1 < order.len() {
        let a = order[i] as usize;
        let mut j = i + 1;
        while j < order.len()
            && flat[a * lmk..(a + 1) * lmk]
                == flat[order[j] as usize * lmk..(order[j] as usize + 1) * lmk]
        {
            j += 1;
        }
        if j - i >= 2 {
            let candidate = (order[i], order[i + 1]);
            if best.is_none() || candidate < best.unwrap() {
                best = Some(candidate);
            }
        }
        i = j;
    }
    Ok(best)
}

/// Diameter-2 Kneser fast path: landmark distance is 1 or 2 by disjointness,
/// so signatures pack to one bit per landmark. Packed equality differs from
/// true signature equality only at vertices that are themselves landmarks
/// (their own coordinate is 0, not 2), so those are excluded when scanning a
/// packed group for a genuine collision.
fn packed_scan(
    g: &GraphInstance,
    landmarks: &[KSubset],
    opts: &VerifyOptions,
) -> Result<Option<(u32, u32)>, VerifyError> {
    let vertices = g.vertex_count().expect("bounded by budget") as usize;
    if vertices < 2 {
        return Ok(None);
    }
    let words = landmarks.len().div_ceil(64);
    let mut flat = vec![0u64; vertices * words.max(1)];
    let stride = words.max(1);

    let ranges = rank_ranges(vertices as u64, opts.effective_workers());
    thread::scope(|scope| -> Result<(), VerifyError> {
        let mut rest: &mut [u64] = &mut flat;
        let mut handles = Vec::new();
        for &(start, end) in &ranges {
            let span = (end - start) as usize * stride;
            let (chunk, tail) = std::mem::take(&mut rest).split_at_mut(span);
            rest = tail;
            handles.push(scope.spawn(move || -> Result<(), VerifyError> {
                let mut vertex = KSubset::unrank_colex(g.n(), g.k(), start)?;
                for local in 0..(end - start) as usize {
                    let row = &mut chunk[local * stride..(local + 1) * stride];
                    for (l, x) in landmarks.iter().enumerate() {
                        if !vertex.is_disjoint(x) {
                            row[l / 64] |= 1u64 << (l % 64);
                        }
                    }
                    if local + 1 < (end - start) as usize {
                        vertex = vertex.next_colex().expect("within vertex count");
                    }
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join().expect("verification worker panicked")?;
        }
        Ok(())
    })?;

    let mut order: Vec<u32> = (0..vertices as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let sa = &flat[a as usize * stride..(a as usize + 1) * stride];
        let sb = &flat[b as usize * stride..(b as usize + 1) * stride];
        sa.cmp(sb).then(a.cmp(&b))
    });

    let landmark_ranks: HashSet<u32> = landmarks
        .iter()
        .map(|x| x.rank_colex().map(|r| r as u32))
        .collect::<Result<_, _>>()?;

    let mut best: Option<(u32, u32)> = None;
    let mut i = 0;
    while i < order.len() {
        let a = order[i] as usize;
        let mut j = i + 1;
        while j < order.len()
            && flat[a * stride..(a + 1) * stride]
                == flat[order[j] as usize * stride..(order[j] as usize + 1) * stride]
        {
            j += 1;
        }
        if j - i >= 2 {
            // Within a packed group, all non-landmark members share one true
            // signature; each landmark member is a singleton class.
            let mut found = [None, None];
            for &rank in &order[i..j] {
                if landmark_ranks.contains(&rank) {
                    continue;
                }
                if found[0].is_none() {
                    found[0] = Some(rank);
                } else {
                    found[1] = Some(rank);
                    break;
                }
            }
            if let (Some(u), Some(w)) = (found[0], found[1]) {
                let candidate = (u, w);
                if best.is_none() || candidate < best.unwrap() {
                    best = Some(candidate);
                }
            }
        }
        i = j;
    }
    Ok(best)
}

/// Johnson pairwise criterion: `S` resolves `J(n,k)` exactly when every pair
/// of disjoint non-empty equal-size sets `U, W` with `|U| <= k` is split by
/// some `X` in `S` with `|X ∩ U| != |X ∩ W|`.
pub fn verify_johnson_by_pairs(
    n: usize,
    k: usize,
    landmarks: &[KSubset],
) -> Result<VerificationReport, VerifyError> {
    if k == 0 || k >= n {
        return Err(VerifyError::Graph(GraphError::InvalidJohnson { n, k }));
    }
    for (index, x) in landmarks.iter().enumerate() {
        if x.n() != n || x.k() != k {
            return Err(VerifyError::InvalidLandmark {
                index,
                reason: format!("expected a {k}-subset of 1..={n}"),
            });
        }
    }

    let mut pairs_checked = 0u64;
    let mut witness = None;
    'outer: for m in 1..=k {
        for u_elems in crate::subsets::subsets_of_elements(&(1..=n).collect::<Vec<_>>(), m) {
            let u = KSubset::new(n, &u_elems)?;
            let complement: Vec<usize> = u.complement().to_vec();
            for w_elems in crate::subsets::subsets_of_elements(&complement, m) {
                let w = KSubset::new(n, &w_elems)?;
                if w < u {
                    continue; // each unordered pair once
                }
                pairs_checked += 1;
                let split = landmarks.iter().any(|x| isect(x, &u) != isect(x, &w));
                if !split {
                    witness = Some(Witness {
                        u,
                        w,
                        kind: WitnessKind::DisjointPair,
                    });
                    break 'outer;
                }
            }
        }
    }

    Ok(VerificationReport {
        family: Family::Johnson,
        n,
        k,
        resolved: witness.is_none(),
        witness,
        landmarks_used: landmarks.len(),
        vertices_checked: pairs_checked,
        oracle: Oracle::Formula,
    })
}

/// Outcome of checking that a Kneser resolving set also resolves the Johnson
/// graph on the same parameters.
#[derive(Debug, Clone)]
pub struct ImplicationCheck {
    pub kneser: VerificationReport,
    pub johnson: VerificationReport,
    pub holds: bool,
}

/// Property harness: whenever `S` resolves `K(n,k)` it must resolve `J(n,k)`.
/// Returns the implication's truth for the given `S`.
pub fn kneser_set_resolves_johnson(
    n: usize,
    k: usize,
    landmarks: &[KSubset],
    opts: &VerifyOptions,
) -> Result<ImplicationCheck, VerifyError> {
    let kneser = verify_resolving(&GraphInstance::kneser(n, k)?, landmarks, opts)?;
    let johnson = verify_resolving(&GraphInstance::johnson(n, k)?, landmarks, opts)?;
    let holds = !kneser.resolved || johnson.resolved;
    Ok(ImplicationCheck {
        kneser,
        johnson,
        holds,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FileFormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing header line `# <family> <n> <k>`")]
    MissingHeader,
    #[error("missing field {field}")]
    MissingField { field: String },
}

/// A candidate resolving set together with its target instance, as stored in
/// the candidate-set file format:
///
/// ```text
/// # <family> <n> <k>
/// 1 2 3
/// 2 5 7
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFile {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub sets: Vec<KSubset>,
}

impl CandidateFile {
    pub fn new(family: Family, n: usize, k: usize, sets: Vec<KSubset>) -> Self {
        CandidateFile { family, n, k, sets }
    }

    pub fn instance(&self) -> Result<GraphInstance, GraphError> {
        GraphInstance::new(self.family, self.n, self.k)
    }

    pub fn parse(text: &str) -> Result<Self, FileFormatError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(FileFormatError::MissingHeader)?;
        let header = header.trim();
        let rest = header
            .strip_prefix('#')
            .ok_or(FileFormatError::MissingHeader)?;
        let mut toks = rest.split_whitespace();
        let family = toks
            .next()
            .and_then(Family::parse)
            .ok_or(FileFormatError::MissingHeader)?;
        let n: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FileFormatError::MissingHeader)?;
        let k: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(FileFormatError::MissingHeader)?;
        if toks.next().is_some() {
            return Err(FileFormatError::Malformed {
                line: 1,
                reason: "trailing tokens after header".into(),
            });
        }
        let mut sets = Vec::new();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let set = KSubset::parse_with_n(n, line).map_err(|e| FileFormatError::Malformed {
                line: lineno + 1,
                reason: e.to_string(),
            })?;
            sets.push(set);
        }
        Ok(CandidateFile { family, n, k, sets })
    }

    /// Emits the bit-exact file form (LF endings, single spaces).
    pub fn to_file_string(&self) -> String {
        let mut out = format!("# {} {} {}\n", self.family, self.n, self.k);
        for s in &self.sets {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}
