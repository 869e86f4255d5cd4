//! Distance oracles for Johnson and Kneser graphs.
//!
//! Johnson distance is `k - |U ∩ W|`. Kneser distance, writing `n = 2k + b`
//! and `s = |U ∩ W|`, is `min{ 2⌈(k-s)/b⌉, 2⌈s/b⌉ + 1 }` for distinct
//! vertices. The Odd graph `O_{k+1} = K(2k+1,k)` follows a parity rule on the
//! intersection size that agrees with the general formula at `b = 1`. A
//! breadth-first-search oracle over implicitly generated neighbors provides an
//! independent reference for all of them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::subsets::{binomial, isect, subsets_of_elements, ColexSubsets, KSubset, CAPACITY};

/// Default cap on `C(n,k)` for the breadth-first-search oracle.
pub const BFS_ORACLE_LIMIT: u64 = 200_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("Johnson graph requires n >= 2k >= 2, got n={n}, k={k}")]
    InvalidJohnson { n: usize, k: usize },
    #[error("Kneser graph requires n > 2k >= 2·1, got n={n}, k={k} (disconnected otherwise)")]
    InvalidKneser { n: usize, k: usize },
    #[error("ground-set size {n} exceeds capacity {cap}", cap = CAPACITY)]
    CapacityExceeded { n: usize },
    #[error("vertex has n={got}, instance has n={expected}")]
    GroundSetMismatch { expected: usize, got: usize },
    #[error("vertex has {got} elements, instance expects k={expected}")]
    WrongSubsetSize { expected: usize, got: usize },
    #[error("odd-graph rule needs n = 2k+1, got n={n}, k={k}")]
    NotOddGraph { n: usize, k: usize },
    #[error("instance has {vertices} vertices, above the oracle limit {limit}")]
    InstanceTooLarge { vertices: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Johnson,
    Kneser,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Johnson => "johnson",
            Family::Kneser => "kneser",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "johnson" | "j" => Some(Family::Johnson),
            "kneser" | "k" => Some(Family::Kneser),
            _ => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One graph `J(n,k)` or `K(n,k)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInstance {
    family: Family,
    n: usize,
    k: usize,
}

impl GraphInstance {
    pub fn new(family: Family, n: usize, k: usize) -> Result<Self, GraphError> {
        match family {
            Family::Johnson => Self::johnson(n, k),
            Family::Kneser => Self::kneser(n, k),
        }
    }

    /// `J(n,k)`; requires `n >= 2k >= 2`.
    pub fn johnson(n: usize, k: usize) -> Result<Self, GraphError> {
        if n > CAPACITY {
            return Err(GraphError::CapacityExceeded { n });
        }
        if k < 1 || n < 2 * k {
            return Err(GraphError::InvalidJohnson { n, k });
        }
        Ok(GraphInstance {
            family: Family::Johnson,
            n,
            k,
        })
    }

    /// `K(n,k)`; requires `n > 2k` (the graph is disconnected otherwise).
    pub fn kneser(n: usize, k: usize) -> Result<Self, GraphError> {
        if n > CAPACITY {
            return Err(GraphError::CapacityExceeded { n });
        }
        if k < 1 || n <= 2 * k {
            return Err(GraphError::InvalidKneser { n, k });
        }
        Ok(GraphInstance {
            family: Family::Kneser,
            n,
            k,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `b = n - 2k` for Kneser instances.
    pub fn b(&self) -> Option<usize> {
        match self.family {
            Family::Kneser => Some(self.n - 2 * self.k),
            Family::Johnson => None,
        }
    }

    /// `true` for `K(2k+1,k)`, the Odd graph `O_{k+1}`.
    pub fn is_odd_graph(&self) -> bool {
        self.family == Family::Kneser && self.n == 2 * self.k + 1
    }

    /// `C(n,k)`, or `None` when it overflows 64 bits.
    pub fn vertex_count(&self) -> Option<u64> {
        binomial(self.n as u64, self.k as u64)
    }

    /// Graph diameter, from the closed-form distance formulas alone.
    pub fn diameter(&self) -> usize {
        match self.family {
            Family::Johnson => self.k,
            Family::Kneser => (0..self.k)
                .map(|s| kneser_distance_by_intersection(self.n, self.k, s))
                .max()
                .unwrap_or(0),
        }
    }

    /// `true` when `v` is a vertex of this instance.
    pub fn contains_vertex(&self, v: &KSubset) -> bool {
        v.n() == self.n && v.k() == self.k
    }

    fn check_vertex(&self, v: &KSubset) -> Result<(), GraphError> {
        if v.n() != self.n {
            return Err(GraphError::GroundSetMismatch {
                expected: self.n,
                got: v.n(),
            });
        }
        if v.k() != self.k {
            return Err(GraphError::WrongSubsetSize {
                expected: self.k,
                got: v.k(),
            });
        }
        Ok(())
    }

    /// Vertices in colexicographic order.
    pub fn vertices(&self) -> ColexSubsets {
        ColexSubsets::new(self.n, self.k).expect("instance parameters already validated")
    }

    /// Family-dispatched distance between two vertices.
    pub fn distance(&self, u: &KSubset, w: &KSubset) -> Result<usize, GraphError> {
        match self.family {
            Family::Johnson => johnson_distance(self, u, w),
            Family::Kneser => kneser_distance(self, u, w),
        }
    }

    /// Distance from the intersection size alone (`s = |U ∩ W|`), valid for
    /// distinct vertices; `s = k` means equal vertices and gives 0.
    pub fn distance_by_intersection(&self, s: usize) -> usize {
        match self.family {
            Family::Johnson => self.k - s,
            Family::Kneser => {
                if s == self.k {
                    0
                } else {
                    kneser_distance_by_intersection(self.n, self.k, s)
                }
            }
        }
    }

    /// Neighbor vertices, generated on the fly.
    pub fn neighbors(&self, u: &KSubset) -> Result<Vec<KSubset>, GraphError> {
        self.check_vertex(u)?;
        let mut out = Vec::new();
        match self.family {
            Family::Johnson => {
                // Swap one element of U for one element outside U.
                let inside = u.to_vec();
                let outside = u.complement().to_vec();
                for &a in &inside {
                    let kept: Vec<usize> = inside.iter().copied().filter(|&e| e != a).collect();
                    for &b in &outside {
                        let mut elems = kept.clone();
                        elems.push(b);
                        out.push(KSubset::new(self.n, &elems).expect("swap stays in range"));
                    }
                }
            }
            Family::Kneser => {
                let outside = u.complement().to_vec();
                for choice in subsets_of_elements(&outside, self.k) {
                    out.push(KSubset::new(self.n, &choice).expect("complement elements"));
                }
            }
        }
        Ok(out)
    }
}

/// Johnson distance `k - |U ∩ W|`.
pub fn johnson_distance(g: &GraphInstance, u: &KSubset, w: &KSubset) -> Result<usize, GraphError> {
    if g.family != Family::Johnson {
        return Err(GraphError::InvalidJohnson { n: g.n, k: g.k });
    }
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    Ok(g.k - isect(u, w))
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// The Kneser distance value for intersection size `s < k`, `n > 2k`.
pub(crate) fn kneser_distance_by_intersection(n: usize, k: usize, s: usize) -> usize {
    let b = n - 2 * k;
    (2 * ceil_div(k - s, b)).min(2 * ceil_div(s, b) + 1)
}

/// Kneser distance: 0 for equal vertices, otherwise the ceiling formula on
/// `s = |U ∩ W|`.
pub fn kneser_distance(g: &GraphInstance, u: &KSubset, w: &KSubset) -> Result<usize, GraphError> {
    if g.family != Family::Kneser {
        return Err(GraphError::InvalidKneser { n: g.n, k: g.k });
    }
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if u == w {
        // The formula also yields 0 at s = k; equality is still special-cased
        // so the result never depends on evaluating it there.
        return Ok(0);
    }
    Ok(kneser_distance_by_intersection(g.n, g.k, isect(u, w)))
}

/// Odd-graph distance rule for `K(2k+1,k)`: `d = 2r` exactly when
/// `|U ∩ W| = k - r`, and `d = 2r + 1` exactly when `|U ∩ W| = r`; the
/// realized distance is the smaller of the two candidates.
pub fn odd_graph_distance(k: usize, u: &KSubset, w: &KSubset) -> Result<usize, GraphError> {
    let n = 2 * k + 1;
    if u.n() != n || w.n() != n {
        return Err(GraphError::NotOddGraph { n: u.n(), k });
    }
    if u.k() != k || w.k() != k {
        return Err(GraphError::WrongSubsetSize {
            expected: k,
            got: u.k().max(w.k()),
        });
    }
    let s = isect(u, w);
    let even_candidate = 2 * (k - s);
    let odd_candidate = 2 * s + 1;
    Ok(even_candidate.min(odd_candidate))
}

/// Shortest-path distance by explicit breadth-first search over implicitly
/// generated neighbors; the reference oracle for the closed-form formulas.
pub fn bfs_distance(
    g: &GraphInstance,
    u: &KSubset,
    w: &KSubset,
    limit: u64,
) -> Result<usize, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if u == w {
        return Ok(0);
    }
    let target = w.rank_colex().map_err(|_| GraphError::InstanceTooLarge {
        vertices: u64::MAX,
        limit,
    })?;
    let dist = bfs_from(g, u, limit, Some(target))?;
    Ok(dist[target as usize] as usize)
}

/// Distances from `source` to every vertex, indexed by colex rank.
pub fn bfs_distances_from(
    g: &GraphInstance,
    source: &KSubset,
    limit: u64,
) -> Result<Vec<u32>, GraphError> {
    g.check_vertex(source)?;
    bfs_from(g, source, limit, None)
}

fn bfs_from(
    g: &GraphInstance,
    source: &KSubset,
    limit: u64,
    stop_at: Option<u64>,
) -> Result<Vec<u32>, GraphError> {
    let vertices = g.vertex_count().ok_or(GraphError::InstanceTooLarge {
        vertices: u64::MAX,
        limit,
    })?;
    if vertices > limit {
        return Err(GraphError::InstanceTooLarge { vertices, limit });
    }
    let count = vertices as usize;
    let mut dist = vec![u32::MAX; count];
    let src_rank = source.rank_colex().expect("within limit") as usize;
    dist[src_rank] = 0;
    let mut frontier = vec![*source];
    let mut level = 0u32;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for nb in g.neighbors(v)? {
                let r = nb.rank_colex().expect("within limit") as usize;
                if dist[r] == u32::MAX {
                    dist[r] = level;
                    if stop_at == Some(r as u64) {
                        return Ok(dist);
                    }
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    Ok(dist)
}
