//! Combinatorial designs and finite geometries, and how they resolve Johnson
//! and Kneser graphs.
//!
//! - symmetric 2-designs (projective planes, Hadamard designs) have
//!   invertible incidence matrices, so their blocks resolve `J(n,k)`;
//! - partial geometries with more lines through a point than points on a
//!   line (`t > s`) resolve `K(v, s+1)`; affine planes are the canonical
//!   family, projective planes (`t = s`) fail for orders above 2;
//! - Steiner systems `S(k-1,k,n)` with `n >= 4k-2` resolve `K(n,k)`.
//!
//! Everything validates exhaustively and in exact integer arithmetic.

pub mod field;
pub mod hadamard;
pub mod matrix;
pub mod planes;
pub mod steiner;

use std::collections::HashMap;

use thiserror::Error;

use crate::graphs::{GraphError, GraphInstance};
use crate::subsets::{binomial, subsets_of_elements, KSubset, SubsetError, CAPACITY};
use crate::verify::FileFormatError;

pub use field::FiniteField;
pub use hadamard::{hadamard_design, hadamard_matrix, is_hadamard};
pub use matrix::IntMatrix;
pub use planes::{affine_plane, projective_plane};
pub use steiner::{steiner_triple_system, sts_admissible};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("{q} is not a prime power")]
    NotPrimePower { q: u32 },
    #[error("field order {q} exceeds the supported limit {limit}", limit = field::FIELD_ORDER_LIMIT)]
    FieldOrderTooLarge { q: u32 },
    #[error("order {order} is unsupported by the implemented Hadamard constructions (Sylvester doubling and Paley)")]
    HadamardUnsupported { order: usize },
    #[error("Steiner triple systems need n ≡ 1 or 3 (mod 6) and n >= 7, got n={n}")]
    StsInadmissible { n: usize },
    #[error("blocks are not uniform in size")]
    NonUniformBlocks,
    #[error("structure has {points} points, above capacity {cap}", cap = CAPACITY)]
    TooManyPoints { points: usize },
    #[error("not a valid partial geometry: axiom ({axiom}) fails: {detail}")]
    PgInvalid { axiom: PgAxiom, detail: String },
    #[error("line set only resolves the Kneser graph when t > s, got s={s}, t={t}; partial geometries with t <= s (projective planes among them, for orders above 2) can fail to resolve")]
    PgNeedsTGreaterS { s: usize, t: usize },
    #[error("blocks do not form an S({t},{k},{n}) Steiner system")]
    NotSteiner { t: usize, k: usize, n: usize },
    #[error("Steiner blocks resolve K(n,k) only for n >= 4k-2, got n={n} < {needed} for k={k}")]
    SteinerHypothesis { n: usize, k: usize, needed: usize },
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A family of blocks (subsets of a point set). The derived incidence matrix
/// is always block-by-point: rows are blocks, columns are points. The
/// point-by-block orientation is only ever reached by explicit transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    n_points: usize,
    blocks: Vec<KSubset>,
}

impl IncidenceStructure {
    pub fn new(n_points: usize, blocks: Vec<KSubset>) -> Result<Self, DesignError> {
        if n_points > CAPACITY {
            return Err(DesignError::TooManyPoints { points: n_points });
        }
        for b in &blocks {
            if b.n() != n_points {
                return Err(DesignError::Subset(SubsetError::GroundSetMismatch {
                    left: n_points,
                    right: b.n(),
                }));
            }
        }
        Ok(IncidenceStructure { n_points, blocks })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn blocks(&self) -> &[KSubset] {
        &self.blocks
    }

    /// Uniform block size, if the blocks are uniform.
    pub fn block_size(&self) -> Option<usize> {
        let k = self.blocks.first()?.k();
        self.blocks.iter().all(|b| b.k() == k).then_some(k)
    }

    /// 0-1 incidence matrix, rows = blocks, columns = points.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.blocks.len(), self.n_points);
        for (i, b) in self.blocks.iter().enumerate() {
            for e in b.elements() {
                m.set(i, e - 1, 1.into());
            }
        }
        m
    }

    /// Interchanges points and blocks: point `p` of the dual is old block
    /// `p`, and dual block `j` collects the old blocks through old point `j`.
    pub fn dual(&self) -> Result<IncidenceStructure, DesignError> {
        let dual_points = self.blocks.len();
        let mut dual_blocks = Vec::with_capacity(self.n_points);
        for p in 1..=self.n_points {
            let elems: Vec<usize> = self
                .blocks
                .iter()
                .enumerate()
                .filter(|(_, b)| b.contains(p))
                .map(|(i, _)| i + 1)
                .collect();
            dual_blocks.push(KSubset::new(dual_points, &elems)?);
        }
        IncidenceStructure::new(dual_points, dual_blocks)
    }

    /// Blocks through the given point.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(point))
            .map(|(i, _)| i)
            .collect()
    }

    /// Emits the incidence-structure file form: `# points=<n> blocks=<b>`,
    /// then one block per line, sorted elements, single spaces, LF endings.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("# points={} blocks={}\n", self.n_points, self.blocks.len());
        for b in &self.blocks {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the file form. Warnings (currently only duplicate blocks) do
    /// not fail the parse.
    pub fn parse(text: &str) -> Result<(Self, Vec<LoadWarning>), FileFormatError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(FileFormatError::MissingHeader)?;
        let header = header.trim();
        let rest = header
            .strip_prefix('#')
            .ok_or(FileFormatError::MissingHeader)?;
        let mut points: Option<usize> = None;
        let mut declared_blocks: Option<usize> = None;
        for tok in rest.split_whitespace() {
            match tok.split_once('=') {
                Some(("points", v)) => points = v.parse().ok(),
                Some(("blocks", v)) => declared_blocks = v.parse().ok(),
                _ => return Err(FileFormatError::MissingHeader),
            }
        }
        let n_points = points.ok_or(FileFormatError::MissingHeader)?;
        let declared = declared_blocks.ok_or(FileFormatError::MissingHeader)?;
        if n_points > CAPACITY {
            return Err(FileFormatError::Malformed {
                line: 1,
                reason: format!("points={n_points} exceeds capacity {CAPACITY}"),
            });
        }

        let mut blocks = Vec::new();
        let mut warnings = Vec::new();
        let mut seen: HashMap<KSubset, usize> = HashMap::new();
        let mut last_line = 1;
        for (lineno, line) in lines {
            last_line = lineno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let block =
                KSubset::parse_with_n(n_points, line).map_err(|e| FileFormatError::Malformed {
                    line: lineno + 1,
                    reason: e.to_string(),
                })?;
            if let Some(&first) = seen.get(&block) {
                warnings.push(LoadWarning::DuplicateBlock {
                    first_line: first,
                    duplicate_line: lineno + 1,
                });
            } else {
                seen.insert(block, lineno + 1);
            }
            blocks.push(block);
        }
        if blocks.len() != declared {
            return Err(FileFormatError::Malformed {
                line: last_line,
                reason: format!("header declares {declared} blocks, found {}", blocks.len()),
            });
        }
        let structure =
            IncidenceStructure::new(n_points, blocks).map_err(|e| FileFormatError::Malformed {
                line: 1,
                reason: e.to_string(),
            })?;
        Ok((structure, warnings))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadWarning {
    DuplicateBlock {
        first_line: usize,
        duplicate_line: usize,
    },
}

impl std::fmt::Display for LoadWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadWarning::DuplicateBlock {
                first_line,
                duplicate_line,
            } => write!(
                f,
                "duplicate block at line {duplicate_line} (first seen at line {first_line})"
            ),
        }
    }
}

/// Validated t-design parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub lambda: u64,
    pub block_count: u64,
    /// `true` when #blocks equals #points.
    pub symmetric: bool,
}

impl DesignParams {
    /// The forced block count `λ·C(n,t)/C(k,t)`; `None` if not integral
    /// (which cannot happen for parameters of an actual design).
    pub fn expected_block_count(&self) -> Option<u64> {
        let num = (self.lambda as u128) * binomial(self.n as u64, self.t as u64)? as u128;
        let den = binomial(self.k as u64, self.t as u64)? as u128;
        (den != 0 && num.is_multiple_of(den)).then(|| (num / den) as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TDesignCheck {
    Valid(DesignParams),
    /// Some t-subset of points is covered `count` times instead of λ.
    Invalid {
        witness: Vec<usize>,
        count: u64,
    },
}

impl TDesignCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, TDesignCheck::Valid(_))
    }

    pub fn params(&self) -> Option<&DesignParams> {
        match self {
            TDesignCheck::Valid(p) => Some(p),
            TDesignCheck::Invalid { .. } => None,
        }
    }
}

/// Checks that every t-subset of points lies in exactly λ blocks.
pub fn validate_t_design(
    ic: &IncidenceStructure,
    t: usize,
    lambda: u64,
) -> Result<TDesignCheck, DesignError> {
    let k = ic.block_size().ok_or(DesignError::NonUniformBlocks)?;
    let n = ic.n_points();
    let points: Vec<usize> = (1..=n).collect();
    for t_subset in subsets_of_elements(&points, t) {
        let probe = KSubset::new(n, &t_subset)?;
        let count = ic.blocks().iter().filter(|b| probe.is_subset_of(b)).count() as u64;
        if count != lambda {
            return Ok(TDesignCheck::Invalid {
                witness: t_subset,
                count,
            });
        }
    }
    Ok(TDesignCheck::Valid(DesignParams {
        t,
        n,
        k,
        lambda,
        block_count: ic.blocks().len() as u64,
        symmetric: ic.blocks().len() == n,
    }))
}

/// Partial-geometry axioms, as conventionally numbered:
/// (i) lines have s+1 points and meet pairwise in at most one point;
/// (ii) points lie on t+1 lines and pairwise on at most one line;
/// (iii) a non-incident point-line pair has exactly α collinear points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgAxiom {
    I,
    II,
    III,
}

impl std::fmt::Display for PgAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PgAxiom::I => "i",
            PgAxiom::II => "ii",
            PgAxiom::III => "iii",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialGeometryParams {
    pub s: usize,
    pub t: usize,
    pub alpha: usize,
    pub points: usize,
    pub lines: usize,
}

impl PartialGeometryParams {
    /// `v = (s+1)(st+α)/α`, forced by the axioms.
    pub fn expected_points(&self) -> Option<usize> {
        let num = (self.s + 1) * (self.s * self.t + self.alpha);
        (self.alpha != 0 && num.is_multiple_of(self.alpha)).then(|| num / self.alpha)
    }

    /// `b = (t+1)(st+α)/α`, forced by the axioms.
    pub fn expected_lines(&self) -> Option<usize> {
        let num = (self.t + 1) * (self.s * self.t + self.alpha);
        (self.alpha != 0 && num.is_multiple_of(self.alpha)).then(|| num / self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgCheck {
    Valid(PartialGeometryParams),
    Violated { axiom: PgAxiom, detail: String },
}

impl PgCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, PgCheck::Valid(_))
    }
}

/// Checks the pg(s,t,α) axioms exhaustively.
pub fn validate_partial_geometry(
    ic: &IncidenceStructure,
    s: usize,
    t: usize,
    alpha: usize,
) -> PgCheck {
    let n = ic.n_points();
    let lines = ic.blocks();

    // (i) line size and pairwise intersections.
    for (idx, line) in lines.iter().enumerate() {
        if line.k() != s + 1 {
            return PgCheck::Violated {
                axiom: PgAxiom::I,
                detail: format!(
                    "line {} has {} points, expected {}",
                    idx + 1,
                    line.k(),
                    s + 1
                ),
            };
        }
    }
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if crate::subsets::isect(&lines[i], &lines[j]) > 1 {
                return PgCheck::Violated {
                    axiom: PgAxiom::I,
                    detail: format!("lines {} and {} share more than one point", i + 1, j + 1),
                };
            }
        }
    }

    // (ii) point degree and pairwise collinearity counts.
    let mut degree = vec![0usize; n + 1];
    for line in lines {
        for p in line.elements() {
            degree[p] += 1;
        }
    }
    if let Some(p) = (1..=n).find(|&p| degree[p] != t + 1) {
        return PgCheck::Violated {
            axiom: PgAxiom::II,
            detail: format!("point {p} lies on {} lines, expected {}", degree[p], t + 1),
        };
    }
    let mut joined = vec![vec![false; n + 1]; n + 1];
    for line in lines {
        let pts = line.to_vec();
        for (a_idx, &a) in pts.iter().enumerate() {
            for &b in &pts[a_idx + 1..] {
                if joined[a][b] {
                    return PgCheck::Violated {
                        axiom: PgAxiom::II,
                        detail: format!("points {a} and {b} lie on more than one line"),
                    };
                }
                joined[a][b] = true;
                joined[b][a] = true;
            }
        }
    }

    // (iii) α collinear points on every non-incident line.
    for (idx, line) in lines.iter().enumerate() {
        for (p, joined_to_p) in joined.iter().enumerate().skip(1) {
            if line.contains(p) {
                continue;
            }
            let collinear = line.elements().filter(|&x| joined_to_p[x]).count();
            if collinear != alpha {
                return PgCheck::Violated {
                    axiom: PgAxiom::III,
                    detail: format!(
                        "point {p} sees {collinear} points of line {} collinear, expected {alpha}",
                        idx + 1
                    ),
                };
            }
        }
    }

    PgCheck::Valid(PartialGeometryParams {
        s,
        t,
        alpha,
        points: n,
        lines: lines.len(),
    })
}

/// Emits the line set of a validated pg(s,t,α) with t > s as a resolving-set
/// candidate for `K(v, s+1)`: through any point off a vertex there are more
/// lines than the other vertex can meet, so some line separates them.
pub fn geometry_lines_as_resolving_set(
    ic: &IncidenceStructure,
    s: usize,
    t: usize,
    alpha: usize,
) -> Result<(Vec<KSubset>, GraphInstance), DesignError> {
    match validate_partial_geometry(ic, s, t, alpha) {
        PgCheck::Valid(_) => {}
        PgCheck::Violated { axiom, detail } => {
            return Err(DesignError::PgInvalid { axiom, detail })
        }
    }
    if t <= s {
        return Err(DesignError::PgNeedsTGreaterS { s, t });
    }
    let target = GraphInstance::kneser(ic.n_points(), s + 1)?;
    Ok((ic.blocks().to_vec(), target))
}

/// Emits the blocks of a validated Steiner system S(k-1,k,n) with
/// `n >= 4k-2` as a resolving-set candidate for `K(n,k)`.
pub fn steiner_blocks_as_resolving_set(
    ic: &IncidenceStructure,
) -> Result<(Vec<KSubset>, GraphInstance), DesignError> {
    let k = ic.block_size().ok_or(DesignError::NonUniformBlocks)?;
    let n = ic.n_points();
    if k < 2 {
        return Err(DesignError::NotSteiner { t: 0, k, n });
    }
    let check = validate_t_design(ic, k - 1, 1)?;
    if !check.is_valid() {
        return Err(DesignError::NotSteiner { t: k - 1, k, n });
    }
    let needed = 4 * k - 2;
    if n < needed {
        return Err(DesignError::SteinerHypothesis { n, k, needed });
    }
    let target = GraphInstance::kneser(n, k)?;
    Ok((ic.blocks().to_vec(), target))
}

/// Outcome of the rank criterion on a set system over `{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCriterion {
    pub rank: usize,
    pub points: usize,
    /// `true` means the incidence matrix has full column rank, which proves
    /// the system resolves `J(n,k)`. `false` means the criterion is
    /// inconclusive, not that the system fails to resolve.
    pub certified: bool,
}

/// Sufficient condition: a family of k-subsets of `{1..n}` whose incidence
/// matrix has rank n resolves `J(n,k)`.
pub fn resolving_by_rank(n: usize, sets: &[KSubset]) -> Result<RankCriterion, DesignError> {
    let Some(_k) = sets.first().map(|s| s.k()) else {
        return Ok(RankCriterion {
            rank: 0,
            points: n,
            certified: n == 0,
        });
    };
    if sets.iter().any(|s| s.k() != sets[0].k()) {
        return Err(DesignError::NonUniformBlocks);
    }
    for s in sets {
        if s.n() != n {
            return Err(DesignError::Subset(SubsetError::GroundSetMismatch {
                left: n,
                right: s.n(),
            }));
        }
    }
    let ic = IncidenceStructure::new(n, sets.to_vec())?;
    let (rank, _) = ic.incidence_matrix().rank_and_det();
    Ok(RankCriterion {
        rank,
        points: n,
        certified: rank == n,
    })
}
