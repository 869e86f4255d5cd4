//! Metric-dimension bounds: an exact branch-and-bound solver over the
//! pair-resolution hitting-set formulation, a greedy upper bound, closed-form
//! lower/exact bounds, and a per-instance summary table.
//!
//! The hitting-set view: vertex `x` resolves the pair `{u,w}` when
//! `d(u,x) != d(w,x)`; a resolving set is a set of vertices hitting every
//! pair, and the metric dimension is the minimum hitting set size.

use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::designs;
use crate::graphs::{Family, GraphError, GraphInstance};
use crate::subsets::{binomial, isect, KSubset, SubsetError};

/// Default vertex cap for the exact solver.
pub const SOLVER_VERTEX_LIMIT: u64 = 20_000;
/// Default per-instance time budget.
pub const SOLVER_TIMEOUT: Duration = Duration::from_secs(60);
/// Default cap on the resolver-table memory.
pub const SOLVER_TABLE_BUDGET: usize = 256 << 20;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("instance has {vertices} vertices, above the solver limit {limit}")]
    InstanceTooLarge { vertices: u64, limit: u64 },
    #[error("resolver tables need {bytes} bytes, above the budget {budget}")]
    TableBudgetExceeded { bytes: usize, budget: usize },
    #[error("bound formula requires n >= 6, got n={n}")]
    K2OutOfRange { n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

#[derive(Debug, Clone, Copy)]
pub struct SolveLimits {
    pub max_vertices: u64,
    pub timeout: Duration,
    pub table_budget_bytes: usize,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            max_vertices: SOLVER_VERTEX_LIMIT,
            timeout: SOLVER_TIMEOUT,
            table_budget_bytes: SOLVER_TABLE_BUDGET,
        }
    }
}

impl SolveLimits {
    pub fn with_timeout(timeout: Duration) -> Self {
        SolveLimits {
            timeout,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveProof {
    /// The search space was exhausted: `dimension` is the metric dimension.
    Exhaustive,
    /// The time budget ran out: `dimension` is only an upper bound.
    TimeoutPartial,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub dimension: usize,
    /// A resolving set of that size; with an exhaustive proof, the
    /// lexicographically least metric basis in colex vertex order.
    pub basis: Vec<KSubset>,
    pub nodes_explored: u64,
    pub proof: SolveProof,
}

/// Bitset helpers over plain u64 words.
mod bits {
    pub fn words_for(bits: usize) -> usize {
        bits.div_ceil(64).max(1)
    }

    pub fn set(buf: &mut [u64], i: usize) {
        buf[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(buf: &mut [u64], i: usize) {
        buf[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(buf: &[u64]) -> usize {
        buf.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_and(a: &[u64], b: &[u64]) -> usize {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn and_assign_not(dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d &= !s;
        }
    }

    pub fn or_assign_and(dst: &mut [u64], a: &[u64], b: &[u64]) {
        for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
            *d |= x & y;
        }
    }

    pub fn intersects(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }

    pub fn iter_ones(buf: &[u64]) -> impl Iterator<Item = usize> + '_ {
        buf.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Precomputed pair-resolution tables for one instance.
struct PairTables {
    vertices: Vec<KSubset>,
    pair_count: usize,
    v_words: usize,
    p_words: usize,
    /// Per vertex: bitset over pairs it resolves.
    by_vertex: Vec<u64>,
    /// Per pair: bitset over vertices resolving it.
    by_pair: Vec<u64>,
}

impl PairTables {
    fn pair_resolvers(&self, p: usize) -> &[u64] {
        &self.by_pair[p * self.v_words..(p + 1) * self.v_words]
    }

    fn vertex_resolves(&self, x: usize) -> &[u64] {
        &self.by_vertex[x * self.p_words..(x + 1) * self.p_words]
    }
}

fn build_tables(
    g: &GraphInstance,
    limits: &SolveLimits,
    deadline: Instant,
) -> Result<Option<PairTables>, SolveError> {
    let vertex_count = g.vertex_count().ok_or(SolveError::InstanceTooLarge {
        vertices: u64::MAX,
        limit: limits.max_vertices,
    })?;
    if vertex_count > limits.max_vertices {
        return Err(SolveError::InstanceTooLarge {
            vertices: vertex_count,
            limit: limits.max_vertices,
        });
    }
    let v = vertex_count as usize;
    let pair_count = v * (v - 1) / 2;
    let v_words = bits::words_for(v);
    let p_words = bits::words_for(pair_count);
    let bytes = 8 * (v * p_words + pair_count * v_words);
    if bytes > limits.table_budget_bytes {
        return Err(SolveError::TableBudgetExceeded {
            bytes,
            budget: limits.table_budget_bytes,
        });
    }

    let vertices: Vec<KSubset> = g.vertices().collect();
    // Distance depends on the intersection size only.
    let dist: Vec<u32> = (0..=g.k())
        .map(|s| g.distance_by_intersection(s) as u32)
        .collect();

    let mut by_vertex = vec![0u64; v * p_words];
    let mut by_pair = vec![0u64; pair_count * v_words];
    let mut p = 0usize;
    for i in 0..v {
        for j in (i + 1)..v {
            if p.is_multiple_of(4096) && Instant::now() > deadline {
                return Ok(None);
            }
            for (x, vx) in vertices.iter().enumerate() {
                let du = dist[isect(&vertices[i], vx)];
                let dw = dist[isect(&vertices[j], vx)];
                if du != dw {
                    bits::set(&mut by_vertex[x * p_words..(x + 1) * p_words], p);
                    bits::set(&mut by_pair[p * v_words..(p + 1) * v_words], x);
                }
            }
            p += 1;
        }
    }

    Ok(Some(PairTables {
        vertices,
        pair_count,
        v_words,
        p_words,
        by_vertex,
        by_pair,
    }))
}

fn full_pair_mask(tables: &PairTables) -> Vec<u64> {
    let mut mask = vec![0u64; tables.p_words];
    for p in 0..tables.pair_count {
        bits::set(&mut mask, p);
    }
    mask
}

fn greedy_indices(tables: &PairTables, deadline: Instant) -> Option<Vec<usize>> {
    let v = tables.vertices.len();
    let mut unresolved = full_pair_mask(tables);
    let mut chosen = Vec::new();
    while bits::count(&unresolved) > 0 {
        if Instant::now() > deadline {
            return None;
        }
        let mut best_x = usize::MAX;
        let mut best_gain = 0usize;
        for x in 0..v {
            let gain = bits::count_and(&unresolved, tables.vertex_resolves(x));
            if gain > best_gain {
                best_gain = gain;
                best_x = x;
            }
        }
        debug_assert!(best_gain > 0, "every pair is resolved by some vertex");
        chosen.push(best_x);
        bits::and_assign_not(&mut unresolved, tables.vertex_resolves(best_x));
    }
    chosen.sort_unstable();
    Some(chosen)
}

struct Search<'a> {
    tables: &'a PairTables,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
    best_size: usize,
    best: Vec<usize>,
}

impl<'a> Search<'a> {
    fn check_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self.nodes.is_multiple_of(256) && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// Greedy packing of unresolved pairs with pairwise-disjoint resolver
    /// sets; its size is a valid lower bound on the vertices still needed.
    /// `None` signals a pair with no allowed resolver (dead branch).
    fn packing_bound(&self, unresolved: &[u64], allowed: &[u64]) -> Option<usize> {
        let mut used = vec![0u64; self.tables.v_words];
        let mut avail = vec![0u64; self.tables.v_words];
        let mut count = 0usize;
        for p in bits::iter_ones(unresolved) {
            let resolvers = self.tables.pair_resolvers(p);
            for ((a, r), w) in avail.iter_mut().zip(resolvers).zip(allowed) {
                *a = r & w;
            }
            if avail.iter().all(|&w| w == 0) {
                return None;
            }
            if !bits::intersects(&avail, &used) {
                count += 1;
                for (u, a) in used.iter_mut().zip(&avail) {
                    *u |= *a;
                }
            }
        }
        Some(count)
    }

    /// Unresolved pair with the fewest allowed resolvers (fail-first).
    fn select_pair(&self, unresolved: &[u64], allowed: &[u64]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for p in bits::iter_ones(unresolved) {
            let cnt = bits::count_and(self.tables.pair_resolvers(p), allowed);
            match best {
                Some((_, c)) if c <= cnt => {}
                _ => best = Some((p, cnt)),
            }
            if cnt <= 1 {
                break; // cannot do better than a forced vertex
            }
        }
        best
    }

    fn branch(&mut self, partial: &mut Vec<usize>, unresolved: &[u64], allowed: &[u64]) {
        self.nodes += 1;
        if self.check_time() {
            return;
        }
        if bits::count(unresolved) == 0 {
            if partial.len() < self.best_size {
                self.best_size = partial.len();
                self.best = partial.clone();
            }
            return;
        }
        let Some(lb) = self.packing_bound(unresolved, allowed) else {
            return;
        };
        if partial.len() + lb >= self.best_size {
            return;
        }
        let Some((pair, _)) = self.select_pair(unresolved, allowed) else {
            return;
        };
        let mut local_allowed = allowed.to_vec();
        let resolvers: Vec<usize> = {
            let mut r = vec![0u64; self.tables.v_words];
            bits::or_assign_and(&mut r, self.tables.pair_resolvers(pair), allowed);
            bits::iter_ones(&r).collect()
        };
        for x in resolvers {
            // Take x in this child; exclude it from every later sibling.
            bits::clear(&mut local_allowed, x);
            let mut child_unresolved = unresolved.to_vec();
            bits::and_assign_not(&mut child_unresolved, self.tables.vertex_resolves(x));
            partial.push(x);
            self.branch(partial, &child_unresolved, &local_allowed);
            partial.pop();
            if self.timed_out {
                return;
            }
        }
    }

    /// Is there a resolving set of size exactly `size` containing `prefix`
    /// and otherwise drawn from `allowed`?
    fn feasible(&mut self, remaining: usize, unresolved: &[u64], allowed: &[u64]) -> bool {
        self.nodes += 1;
        if self.check_time() {
            return false;
        }
        if bits::count(unresolved) == 0 {
            return true;
        }
        let Some(lb) = self.packing_bound(unresolved, allowed) else {
            return false;
        };
        if lb > remaining {
            return false;
        }
        let Some((pair, _)) = self.select_pair(unresolved, allowed) else {
            return false;
        };
        let mut local_allowed = allowed.to_vec();
        let resolvers: Vec<usize> = {
            let mut r = vec![0u64; self.tables.v_words];
            bits::or_assign_and(&mut r, self.tables.pair_resolvers(pair), allowed);
            bits::iter_ones(&r).collect()
        };
        for x in resolvers {
            bits::clear(&mut local_allowed, x);
            let mut child_unresolved = unresolved.to_vec();
            bits::and_assign_not(&mut child_unresolved, self.tables.vertex_resolves(x));
            if self.feasible(remaining - 1, &child_unresolved, &local_allowed) {
                return true;
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// The lexicographically least resolving set of the given (minimum) size,
/// built one vertex at a time with feasibility searches.
fn lex_min_basis(search: &mut Search<'_>, size: usize) -> Option<Vec<usize>> {
    let v = search.tables.vertices.len();
    let words = search.tables.v_words;
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    let mut unresolved = full_pair_mask(search.tables);
    let mut floor = 0usize;
    while chosen.len() < size {
        let mut advanced = false;
        let mut x = floor;
        while x < v {
            let mut child_unresolved = unresolved.clone();
            bits::and_assign_not(&mut child_unresolved, search.tables.vertex_resolves(x));
            // Remaining picks must come from vertices above x.
            let mut allowed = vec![0u64; words];
            for y in (x + 1)..v {
                bits::set(&mut allowed, y);
            }
            let remaining = size - chosen.len() - 1;
            if search.feasible(remaining, &child_unresolved, &allowed) {
                chosen.push(x);
                unresolved = child_unresolved;
                floor = x + 1;
                advanced = true;
                break;
            }
            if search.timed_out {
                return None;
            }
            x += 1;
        }
        if !advanced {
            return None;
        }
    }
    Some(chosen)
}

/// Exact metric dimension by branch and bound, seeded with the greedy upper
/// bound and the determining-number lower bound.
pub fn exact_metric_dimension(
    g: &GraphInstance,
    limits: &SolveLimits,
) -> Result<SolveResult, SolveError> {
    let deadline = Instant::now() + limits.timeout;
    let Some(tables) = build_tables(g, limits, deadline)? else {
        // Timed out while building; report the trivial full-vertex upper
        // bound so the result still carries a verifying basis.
        let basis: Vec<KSubset> = g.vertices().collect();
        return Ok(SolveResult {
            dimension: basis.len(),
            basis,
            nodes_explored: 0,
            proof: SolveProof::TimeoutPartial,
        });
    };
    let v = tables.vertices.len();
    if v <= 1 {
        return Ok(SolveResult {
            dimension: 0,
            basis: Vec::new(),
            nodes_explored: 0,
            proof: SolveProof::Exhaustive,
        });
    }

    let greedy = greedy_indices(&tables, deadline);
    let (mut best, timed_out_in_greedy) = match greedy {
        Some(chosen) => (chosen, false),
        None => ((0..v).collect(), true),
    };

    let mut search = Search {
        tables: &tables,
        deadline,
        nodes: 0,
        timed_out: timed_out_in_greedy,
        best_size: best.len(),
        best: best.clone(),
    };

    let root_lower = determining_lower_bound(g.n(), g.k())
        .map(|b| b.value)
        .unwrap_or(1);

    if !search.timed_out && search.best_size > root_lower {
        let unresolved = full_pair_mask(&tables);
        let mut allowed = vec![0u64; tables.v_words];
        for x in 0..v {
            bits::set(&mut allowed, x);
        }
        let mut partial = Vec::new();
        search.branch(&mut partial, &unresolved, &allowed);
    }
    best = search.best.clone();
    let proof = if search.timed_out {
        SolveProof::TimeoutPartial
    } else {
        SolveProof::Exhaustive
    };

    if proof == SolveProof::Exhaustive {
        // Deterministic tie-break: the lexicographically least basis in colex
        // vertex order. Falls back to the search's basis on timeout.
        if let Some(lex) = lex_min_basis(&mut search, best.len()) {
            best = lex;
        }
    }

    let nodes = search.nodes;
    Ok(SolveResult {
        dimension: best.len(),
        basis: best.iter().map(|&x| tables.vertices[x]).collect(),
        nodes_explored: nodes,
        proof,
    })
}

/// Parallel variant: splits the root branching across `workers` threads,
/// each exhausting its share of the root pair's resolvers independently.
/// Any minimum solution contains exactly one least root resolver, so the
/// minimum over subtrees is the same dimension the sequential search finds;
/// the basis is then rebuilt by the deterministic lexicographic pass, so the
/// whole result is identical for every worker count.
pub fn exact_metric_dimension_parallel(
    g: &GraphInstance,
    limits: &SolveLimits,
    workers: usize,
) -> Result<SolveResult, SolveError> {
    if workers <= 1 {
        return exact_metric_dimension(g, limits);
    }
    let deadline = Instant::now() + limits.timeout;
    let Some(tables) = build_tables(g, limits, deadline)? else {
        let basis: Vec<KSubset> = g.vertices().collect();
        return Ok(SolveResult {
            dimension: basis.len(),
            basis,
            nodes_explored: 0,
            proof: SolveProof::TimeoutPartial,
        });
    };
    let v = tables.vertices.len();
    if v <= 1 {
        return Ok(SolveResult {
            dimension: 0,
            basis: Vec::new(),
            nodes_explored: 0,
            proof: SolveProof::Exhaustive,
        });
    }
    let greedy = match greedy_indices(&tables, deadline) {
        Some(chosen) => chosen,
        None => (0..v).collect(),
    };
    let root_lower = determining_lower_bound(g.n(), g.k())
        .map(|b| b.value)
        .unwrap_or(1);

    let mut best = greedy.clone();
    let mut nodes_total = 0u64;
    let mut timed_out = false;
    if best.len() > root_lower {
        let unresolved = full_pair_mask(&tables);
        let mut allowed = vec![0u64; tables.v_words];
        for x in 0..v {
            bits::set(&mut allowed, x);
        }
        let probe = Search {
            tables: &tables,
            deadline,
            nodes: 0,
            timed_out: false,
            best_size: best.len(),
            best: best.clone(),
        };
        let Some((pair, _)) = probe.select_pair(&unresolved, &allowed) else {
            unreachable!("unresolved pairs always have resolvers");
        };
        let resolvers: Vec<usize> = bits::iter_ones(tables.pair_resolvers(pair)).collect();

        // Child i takes resolver x_i and excludes x_0..x_{i-1}; each child is
        // handed to one of the worker slots round-robin.
        let outcomes: Vec<(usize, Vec<usize>, u64, bool)> = thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                let tables = &tables;
                let resolvers = &resolvers;
                let allowed = &allowed;
                let unresolved = &unresolved;
                let greedy = &greedy;
                handles.push(scope.spawn(move || {
                    let mut search = Search {
                        tables,
                        deadline,
                        nodes: 0,
                        timed_out: false,
                        best_size: greedy.len(),
                        best: greedy.clone(),
                    };
                    for (i, &x) in resolvers.iter().enumerate() {
                        if i % workers != w {
                            continue;
                        }
                        let mut child_allowed = allowed.clone();
                        for &earlier in &resolvers[..i] {
                            bits::clear(&mut child_allowed, earlier);
                        }
                        bits::clear(&mut child_allowed, x);
                        let mut child_unresolved = unresolved.clone();
                        bits::and_assign_not(&mut child_unresolved, tables.vertex_resolves(x));
                        let mut partial = vec![x];
                        search.branch(&mut partial, &child_unresolved, &child_allowed);
                        if search.timed_out {
                            break;
                        }
                    }
                    (
                        search.best_size,
                        search.best,
                        search.nodes,
                        search.timed_out,
                    )
                }));
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("solver worker panicked"))
                .collect()
        });
        for (size, basis, nodes, worker_timed_out) in outcomes {
            nodes_total += nodes;
            timed_out |= worker_timed_out;
            if size < best.len() {
                best = basis;
            }
        }
    }

    let proof = if timed_out {
        SolveProof::TimeoutPartial
    } else {
        SolveProof::Exhaustive
    };
    if proof == SolveProof::Exhaustive {
        let mut finisher = Search {
            tables: &tables,
            deadline,
            nodes: nodes_total,
            timed_out: false,
            best_size: best.len(),
            best: best.clone(),
        };
        if let Some(lex) = lex_min_basis(&mut finisher, best.len()) {
            best = lex;
        }
        nodes_total = finisher.nodes;
    }
    Ok(SolveResult {
        dimension: best.len(),
        basis: best.iter().map(|&x| tables.vertices[x]).collect(),
        nodes_explored: nodes_total,
        proof,
    })
}

/// Greedy upper bound: repeatedly add the vertex resolving the most
/// still-unresolved pairs (ties to the colex-least vertex).
pub fn greedy_resolving_set(
    g: &GraphInstance,
    limits: &SolveLimits,
) -> Result<Vec<KSubset>, SolveError> {
    let deadline = Instant::now() + limits.timeout;
    let Some(tables) = build_tables(g, limits, deadline)? else {
        return Ok(g.vertices().collect());
    };
    if tables.vertices.len() <= 1 {
        return Ok(Vec::new());
    }
    let chosen =
        greedy_indices(&tables, deadline).unwrap_or_else(|| (0..tables.vertices.len()).collect());
    Ok(chosen.iter().map(|&x| tables.vertices[x]).collect())
}

/// The determining number of both `J(n,k)` and `K(n,k)` when the closed form
/// applies, a lower bound on their metric dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterminingBound {
    pub value: usize,
    /// Set when more than one `d` satisfies the defining inequality; the
    /// smallest is reported.
    pub ambiguous: bool,
}

/// The unique `d >= k+1 >= 3` with
/// `⌊(d-1)(k+1)/2⌋ < n-1 <= ⌊d(k+1)/2⌋`, provided `n > C(k+1,2)`;
/// `None` when the hypotheses admit no such `d`.
pub fn determining_lower_bound(n: usize, k: usize) -> Option<DeterminingBound> {
    if k < 2 {
        return None;
    }
    let threshold = binomial((k + 1) as u64, 2)?;
    if (n as u64) <= threshold {
        return None;
    }
    let mut found = Vec::new();
    for d in (k + 1)..=(2 * n + 2) {
        let left = (d - 1) * (k + 1) / 2;
        let right = d * (k + 1) / 2;
        if left < n - 1 && n - 1 <= right {
            found.push(d);
        }
        if left >= n - 1 {
            break;
        }
    }
    let first = *found.first()?;
    Some(DeterminingBound {
        value: first,
        ambiguous: found.len() > 1,
    })
}

/// Exact metric dimension of `J(n,2)` and `K(n,2)` for `n >= 6`:
/// `(2/3)(n-i) + i` where `n ≡ i (mod 3)`.
pub fn k2_exact(n: usize) -> Result<u64, SolveError> {
    if n < 6 {
        return Err(SolveError::K2OutOfRange { n });
    }
    let i = (n % 3) as u64;
    Ok(2 * (n as u64 - i) / 3 + i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        }
    }
}

/// One evaluated bound for an instance: where it comes from, its value, and
/// whether its hypotheses hold for these parameters.
#[derive(Debug, Clone)]
pub struct BoundRecord {
    pub name: &'static str,
    pub source: &'static str,
    pub direction: Direction,
    pub value: Option<u64>,
    pub applicable: bool,
    pub reason: String,
}

impl BoundRecord {
    fn applies(
        name: &'static str,
        source: &'static str,
        direction: Direction,
        value: u64,
        reason: String,
    ) -> Self {
        BoundRecord {
            name,
            source,
            direction,
            value: Some(value),
            applicable: true,
            reason,
        }
    }

    fn skipped(
        name: &'static str,
        source: &'static str,
        direction: Direction,
        reason: String,
    ) -> Self {
        BoundRecord {
            name,
            source,
            direction,
            value: None,
            applicable: false,
            reason,
        }
    }
}

fn is_constructible_prime_power(q: usize) -> bool {
    (2..=64).contains(&q) && designs::FiniteField::new(q as u32).is_ok()
}

fn hadamard_reachable(order: usize) -> bool {
    designs::hadamard_matrix(order).is_ok()
}

fn toroidal_split(n: usize, k: usize) -> Option<(usize, usize)> {
    let min = match k {
        4 => 10,
        5 => 13,
        6 => 16,
        _ => return None,
    };
    (min..=n / min)
        .find(|a| n.is_multiple_of(*a) && n / a >= min)
        .map(|a| (a, n / a))
}

/// Every bound row relevant to the instance's family, with applicability.
pub fn bound_table(g: &GraphInstance) -> Vec<BoundRecord> {
    let (n, k) = (g.n(), g.k());
    let nn = n as u64;
    let kk = k as u64;
    let mut rows = Vec::new();

    // Exact congruence formula at k = 2 (both families).
    if k == 2 {
        match k2_exact(n) {
            Ok(value) => rows.push(BoundRecord::applies(
                "k2-congruence",
                "closed form by residue of n mod 3",
                Direction::Exact,
                value,
                format!("n = {n} ≡ {} (mod 3)", n % 3),
            )),
            Err(_) => rows.push(BoundRecord::skipped(
                "k2-congruence",
                "closed form by residue of n mod 3",
                Direction::Exact,
                "needs n >= 6".into(),
            )),
        }
    }

    match g.family() {
        Family::Johnson => {
            if k >= 2 {
                rows.push(BoundRecord::applies(
                    "johnson-partition",
                    "ground-set partition into blocks of size k+1",
                    Direction::Upper,
                    kk * (nn + 1) / (kk + 1),
                    format!("⌊{k}({n}+1)/{}⌋", k + 1),
                ));
            }
            if k >= 2 && n >= k + 2 {
                rows.push(BoundRecord::applies(
                    "matrix-basic",
                    "size-n system with invertible incidence matrix",
                    Direction::Upper,
                    nn,
                    "rank-n incidence matrix".into(),
                ));
            }
            if k >= 2 {
                let q = k - 1;
                if n == q * q + q + 1 && is_constructible_prime_power(q) {
                    rows.push(BoundRecord::applies(
                        "projective-plane",
                        "lines of the projective plane of order q",
                        Direction::Upper,
                        nn,
                        format!("n = q²+q+1 with q = {q}"),
                    ));
                }
            }
            if k % 2 == 1 {
                let m = k.div_ceil(2);
                if n == 4 * m - 1 && hadamard_reachable(4 * m) {
                    rows.push(BoundRecord::applies(
                        "hadamard-design",
                        "blocks of the (4m-1, 2m-1, m-1) design",
                        Direction::Upper,
                        nn,
                        format!("m = {m}"),
                    ));
                }
            }
        }
        Family::Kneser => {
            if k >= 2 {
                let width = 2 * kk - 1;
                let per = binomial(width, kk).map(|c| c - 1);
                match per {
                    Some(per) => rows.push(BoundRecord::applies(
                        "kneser-partition",
                        "ground-set partition into blocks of size 2k-1",
                        Direction::Upper,
                        nn.div_ceil(width) * per,
                        format!("⌈{n}/{}⌉·(C({},{k})-1)", 2 * k - 1, 2 * k - 1),
                    )),
                    None => rows.push(BoundRecord::skipped(
                        "kneser-partition",
                        "ground-set partition into blocks of size 2k-1",
                        Direction::Upper,
                        "block binomial overflows".into(),
                    )),
                }
            }
            if n == 2 * k + 1 && k >= 2 {
                rows.push(BoundRecord::applies(
                    "odd-graph-partition",
                    "partition bound transferred from J(2k+1,k)",
                    Direction::Upper,
                    2 * kk,
                    "resolving sets of J(2k+1,k) and K(2k+1,k) coincide".into(),
                ));
            }
            if k >= 4 && n >= 5 * k / 2 && n <= 3 * k - 2 {
                if let Some(c) = binomial((n - k) as u64, kk) {
                    rows.push(BoundRecord::applies(
                        "kneser-diam3",
                        "two overlapping windows (diameter-3 range)",
                        Direction::Upper,
                        2 * c,
                        format!("2·C({},{k})", n - k),
                    ));
                }
            }
            if k == 3 {
                if n >= 13 && (n % 6 == 1 || n % 6 == 3) {
                    rows.push(BoundRecord::applies(
                        "steiner-triple-system",
                        "blocks of an STS(n)",
                        Direction::Upper,
                        nn * (nn - 1) / 6,
                        format!("{n}({n}-1)/6"),
                    ));
                } else {
                    rows.push(BoundRecord::skipped(
                        "steiner-triple-system",
                        "blocks of an STS(n)",
                        Direction::Upper,
                        "needs n ≡ 1,3 (mod 6) and n >= 13".into(),
                    ));
                }
            }
            let q = k;
            if n == q * q && q >= 3 && is_constructible_prime_power(q) {
                rows.push(BoundRecord::applies(
                    "affine-plane",
                    "lines of the affine plane of order q",
                    Direction::Upper,
                    (q * q + q) as u64,
                    format!("q({q}+1) with q = {q}"),
                ));
            }
            if k % 2 == 1 && n == 2 * k + 1 {
                let m = k.div_ceil(2);
                if hadamard_reachable(4 * m) {
                    rows.push(BoundRecord::applies(
                        "hadamard-design",
                        "blocks of the (4m-1, 2m-1, m-1) design",
                        Direction::Upper,
                        nn,
                        format!("m = {m}; resolves the odd graph on these parameters"),
                    ));
                }
            }
            if (4..=6).contains(&k) {
                match toroidal_split(n, k) {
                    Some((a, b)) => rows.push(BoundRecord::applies(
                        "toroidal-paths",
                        "straight k-paths of a torus C_a x C_b",
                        Direction::Upper,
                        2 * nn,
                        format!("n = {a}·{b}"),
                    )),
                    None => rows.push(BoundRecord::skipped(
                        "toroidal-paths",
                        "straight k-paths of a torus C_a x C_b",
                        Direction::Upper,
                        "n admits no factorization with both sides above the threshold".into(),
                    )),
                }
            }
        }
    }

    match determining_lower_bound(n, k) {
        Some(bound) => rows.push(BoundRecord::applies(
            "determining-number",
            "smallest base of the automorphism group",
            Direction::Lower,
            bound.value as u64,
            if bound.ambiguous {
                "multiple d satisfy the inequality; smallest reported".into()
            } else {
                format!("d = {}", bound.value)
            },
        )),
        None => rows.push(BoundRecord::skipped(
            "determining-number",
            "smallest base of the automorphism group",
            Direction::Lower,
            format!("needs n > C({},2) and an admissible d >= k+1", k + 1),
        )),
    }

    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_resolving, VerifyOptions};

    fn solve(family: Family, n: usize, k: usize) -> SolveResult {
        let g = GraphInstance::new(family, n, k).unwrap();
        exact_metric_dimension(&g, &SolveLimits::default()).unwrap()
    }

    #[test]
    fn known_small_dimensions() {
        assert_eq!(solve(Family::Johnson, 6, 2).dimension, 4);
        assert_eq!(solve(Family::Johnson, 4, 2).dimension, 3);
        assert_eq!(solve(Family::Kneser, 5, 2).dimension, 3);
        assert_eq!(solve(Family::Johnson, 6, 3).dimension, 4);
    }

    #[test]
    fn solver_basis_verifies_and_is_minimal() {
        let g = GraphInstance::johnson(6, 2).unwrap();
        let result = solve(Family::Johnson, 6, 2);
        assert_eq!(result.proof, SolveProof::Exhaustive);
        let report = verify_resolving(&g, &result.basis, &VerifyOptions::default()).unwrap();
        assert!(report.resolved);
        // Removing any single element must break it.
        for skip in 0..result.basis.len() {
            let smaller: Vec<_> = result
                .basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, s)| *s)
                .collect();
            let report = verify_resolving(&g, &smaller, &VerifyOptions::default()).unwrap();
            assert!(!report.resolved, "basis must be minimal");
        }
    }

    #[test]
    fn solver_returns_lex_least_basis() {
        // Brute force the lexicographically least minimum basis on J(4,2).
        let g = GraphInstance::johnson(4, 2).unwrap();
        let vertices: Vec<KSubset> = g.vertices().collect();
        let result = solve(Family::Johnson, 4, 2);
        let mut expected: Option<Vec<usize>> = None;
        let m = result.dimension;
        for combo in
            crate::subsets::subsets_of_elements(&(0..vertices.len()).collect::<Vec<_>>(), m)
        {
            let candidate: Vec<KSubset> = combo.iter().map(|&i| vertices[i]).collect();
            let ok = verify_resolving(&g, &candidate, &VerifyOptions::default())
                .unwrap()
                .resolved;
            if ok {
                let sorted = combo.clone();
                if expected.as_ref().is_none_or(|best| &sorted < best) {
                    expected = Some(sorted);
                }
            }
        }
        let expected: Vec<KSubset> = expected.unwrap().into_iter().map(|i| vertices[i]).collect();
        assert_eq!(result.basis, expected);
    }

    #[test]
    fn greedy_is_valid_and_at_least_exact() {
        for (family, n, k) in [
            (Family::Johnson, 4, 2),
            (Family::Johnson, 6, 2),
            (Family::Kneser, 5, 2),
        ] {
            let g = GraphInstance::new(family, n, k).unwrap();
            let greedy = greedy_resolving_set(&g, &SolveLimits::default()).unwrap();
            let report = verify_resolving(&g, &greedy, &VerifyOptions::default()).unwrap();
            assert!(report.resolved);
            assert!(greedy.len() <= 4, "tiny instances stay under 4 landmarks");
            let exact = solve(family, n, k);
            assert!(greedy.len() >= exact.dimension);
        }
    }

    #[test]
    fn solver_basis_passes_the_pairwise_criterion() {
        let result = solve(Family::Johnson, 6, 2);
        let by_pairs = crate::verify::verify_johnson_by_pairs(6, 2, &result.basis).unwrap();
        assert!(by_pairs.resolved);
    }

    #[test]
    fn rank_certificate_false_does_not_mean_unresolved() {
        // The partition set for J(9,3) has 7 < 9 members, so the rank
        // criterion cannot certify it; the exhaustive check still passes.
        let c = crate::constructions::johnson_partition(9, 3).unwrap();
        let crit = crate::designs::resolving_by_rank(9, &c.sets).unwrap();
        assert!(!crit.certified);
        assert!(crit.rank <= 7);
        let g = GraphInstance::johnson(9, 3).unwrap();
        let report = verify_resolving(&g, &c.sets, &VerifyOptions::default()).unwrap();
        assert!(report.resolved);
    }

    #[test]
    fn determining_bound_examples() {
        assert_eq!(
            determining_lower_bound(6, 2),
            Some(DeterminingBound {
                value: 4,
                ambiguous: false
            })
        );
        assert_eq!(
            determining_lower_bound(9, 3),
            Some(DeterminingBound {
                value: 4,
                ambiguous: false
            })
        );
        assert_eq!(determining_lower_bound(7, 3), None);
        // Petersen: n=5 > C(3,2)=3, and d=3 satisfies the inequality.
        assert_eq!(
            determining_lower_bound(5, 2),
            Some(DeterminingBound {
                value: 3,
                ambiguous: false
            })
        );
        assert_eq!(determining_lower_bound(3, 2), None);
    }

    #[test]
    fn k2_exact_values() {
        assert_eq!(k2_exact(6).unwrap(), 4);
        assert_eq!(k2_exact(7).unwrap(), 5);
        assert_eq!(k2_exact(8).unwrap(), 6);
        assert_eq!(k2_exact(9).unwrap(), 6);
        assert!(k2_exact(5).is_err());
    }

    #[test]
    fn parallel_mode_matches_sequential() {
        for (family, n, k) in [
            (Family::Johnson, 6, 2),
            (Family::Johnson, 6, 3),
            (Family::Kneser, 5, 2),
            (Family::Kneser, 7, 3),
        ] {
            let g = GraphInstance::new(family, n, k).unwrap();
            let sequential = exact_metric_dimension(&g, &SolveLimits::default()).unwrap();
            for workers in [2usize, 3, 5] {
                let parallel =
                    exact_metric_dimension_parallel(&g, &SolveLimits::default(), workers).unwrap();
                assert_eq!(
                    parallel.dimension, sequential.dimension,
                    "{family}({n},{k})"
                );
                assert_eq!(parallel.basis, sequential.basis, "{family}({n},{k})");
                assert_eq!(parallel.proof, SolveProof::Exhaustive);
            }
        }
    }

    #[test]
    fn timeout_yields_partial_proof() {
        let g = GraphInstance::johnson(12, 4).unwrap();
        let limits = SolveLimits {
            timeout: Duration::from_millis(1),
            ..Default::default()
        };
        let result = exact_metric_dimension(&g, &limits).unwrap();
        assert_eq!(result.proof, SolveProof::TimeoutPartial);
        // Even partial results carry a genuine resolving set.
        let report = verify_resolving(&g, &result.basis, &VerifyOptions::default()).unwrap();
        assert!(report.resolved);
    }

    #[test]
    fn vertex_limit_enforced() {
        let g = GraphInstance::kneser(100, 4).unwrap();
        assert!(matches!(
            exact_metric_dimension(&g, &SolveLimits::default()),
            Err(SolveError::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn bound_table_johnson_9_3() {
        let g = GraphInstance::johnson(9, 3).unwrap();
        let rows = bound_table(&g);
        let find = |name: &str| rows.iter().find(|r| r.name == name).unwrap();
        assert_eq!(find("johnson-partition").value, Some(7));
        assert_eq!(find("matrix-basic").value, Some(9));
        assert_eq!(find("determining-number").value, Some(4));
    }

    #[test]
    fn bound_table_kneser_examples() {
        let g = GraphInstance::kneser(13, 3).unwrap();
        let rows = bound_table(&g);
        let sts = rows
            .iter()
            .find(|r| r.name == "steiner-triple-system")
            .unwrap();
        assert_eq!(sts.value, Some(26));

        let g = GraphInstance::kneser(100, 4).unwrap();
        let rows = bound_table(&g);
        let tor = rows.iter().find(|r| r.name == "toroidal-paths").unwrap();
        assert_eq!(tor.value, Some(200));

        let g = GraphInstance::kneser(9, 3).unwrap();
        let rows = bound_table(&g);
        let affine = rows.iter().find(|r| r.name == "affine-plane").unwrap();
        assert_eq!(affine.value, Some(12));

        let g = GraphInstance::kneser(7, 3).unwrap();
        let rows = bound_table(&g);
        let odd = rows
            .iter()
            .find(|r| r.name == "odd-graph-partition")
            .unwrap();
        assert_eq!(odd.value, Some(6));
        let had = rows.iter().find(|r| r.name == "hadamard-design").unwrap();
        assert_eq!(had.value, Some(7));

        // Diameter-3 window: K(13,5) admits the two-window bound 2·C(8,5).
        let g = GraphInstance::kneser(13, 5).unwrap();
        let rows = bound_table(&g);
        let d3 = rows.iter().find(|r| r.name == "kneser-diam3").unwrap();
        assert_eq!(d3.value, Some(112));
    }

    #[test]
    fn bound_table_consistency() {
        for (family, n, k) in [
            (Family::Johnson, 6, 2),
            (Family::Johnson, 9, 3),
            (Family::Kneser, 7, 3),
            (Family::Kneser, 9, 3),
        ] {
            let g = GraphInstance::new(family, n, k).unwrap();
            let rows = bound_table(&g);
            let lowers: Vec<u64> = rows
                .iter()
                .filter(|r| r.applicable && r.direction == Direction::Lower)
                .filter_map(|r| r.value)
                .collect();
            let uppers: Vec<u64> = rows
                .iter()
                .filter(|r| r.applicable && r.direction == Direction::Upper)
                .filter_map(|r| r.value)
                .collect();
            let exacts: Vec<u64> = rows
                .iter()
                .filter(|r| r.applicable && r.direction == Direction::Exact)
                .filter_map(|r| r.value)
                .collect();
            for &lo in &lowers {
                for &hi in &uppers {
                    assert!(lo <= hi, "{family} {n} {k}: {lo} > {hi}");
                }
                for &ex in &exacts {
                    assert!(lo <= ex);
                }
            }
            for &ex in &exacts {
                for &hi in &uppers {
                    assert!(ex <= hi);
                }
            }
        }
    }
}
