//! Finite simple undirected graphs with the shortest-path metric, spheres,
//! disks, and growth functions.
//!
//! Distances are computed by per-source BFS and cached, so repeated metric
//! queries (motion reports, net construction, sphere codes) stay cheap at
//! desk scale. A `Graph` is immutable after construction and safe to share
//! across threads; the cache is guarded and BFS itself is deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};

/// Internal sentinel for "no path" in raw distance rows.
pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// Shortest-path distance: a natural number or an explicit infinity for
/// vertices in different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub(crate) fn from_raw(raw: u32) -> Distance {
        if raw == UNREACHABLE {
            Distance::Infinite
        } else {
            Distance::Finite(raw as usize)
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Distance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and deduplicated; there are no loops and the
/// relation is symmetric. Optional per-vertex labels are carried for
/// generated families whose vertices have meaningful names.
#[derive(Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    dist_cache: RwLock<HashMap<usize, Arc<Vec<u32>>>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            adj: self.adj.clone(),
            labels: self.labels.clone(),
            dist_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    /// Build a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Duplicate edges (in either orientation) collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n >= UNREACHABLE as usize {
            return Err(Error::SizeBudget(format!("{n} vertices")));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adj,
            labels: None,
            dist_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Attach per-vertex labels; the list must match the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::ColoringLength {
                got: labels.len(),
                expected: self.n(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree over all vertices (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    fn bfs_row(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            for &w in &self.adj[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The cached BFS distance row from `src`; `u32::MAX` marks vertices in
    /// other components. Prefer [`Graph::distance`] unless a whole row is
    /// needed.
    pub fn dist_row(&self, src: usize) -> Result<Arc<Vec<u32>>> {
        self.check_vertex(src)?;
        if let Some(row) = self.dist_cache.read().unwrap().get(&src) {
            return Ok(Arc::clone(row));
        }
        let row = Arc::new(self.bfs_row(src));
        let mut cache = self.dist_cache.write().unwrap();
        let entry = cache.entry(src).or_insert_with(|| Arc::clone(&row));
        Ok(Arc::clone(entry))
    }

    /// Shortest-path distance between two vertices.
    pub fn distance(&self, x: usize, y: usize) -> Result<Distance> {
        self.check_vertex(y)?;
        let row = self.dist_row(x)?;
        Ok(Distance::from_raw(row[y]))
    }

    /// Distance from every vertex to the nearest source, by multi-source
    /// BFS. Not cached.
    pub fn multi_source_distances(&self, sources: &[usize]) -> Result<Vec<u32>> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            self.check_vertex(s)?;
            if dist[s] == UNREACHABLE {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            for &w in &self.adj[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let row = self.bfs_row(0);
        row.iter().all(|&d| d != UNREACHABLE)
    }

    /// Vertices at distance exactly `r` from `x`, ascending.
    pub fn sphere(&self, x: usize, r: usize) -> Result<Vec<usize>> {
        let row = self.dist_row(x)?;
        Ok((0..self.n())
            .filter(|&v| row[v] != UNREACHABLE && row[v] as usize == r)
            .collect())
    }

    /// Vertices at distance at most `r` from `x`, ascending.
    pub fn disk(&self, x: usize, r: usize) -> Result<Vec<usize>> {
        let row = self.dist_row(x)?;
        Ok((0..self.n())
            .filter(|&v| row[v] != UNREACHABLE && row[v] as usize <= r)
            .collect())
    }

    /// Sphere and disk sizes around `x` for radii `0..=r_max`.
    pub fn growth_profile(&self, x: usize, r_max: usize) -> Result<GrowthProfile> {
        let row = self.dist_row(x)?;
        let mut sigma = vec![0u64; r_max + 1];
        for &d in row.iter() {
            if d != UNREACHABLE && (d as usize) <= r_max {
                sigma[d as usize] += 1;
            }
        }
        let mut beta = vec![0u64; r_max + 1];
        let mut acc = 0u64;
        for r in 0..=r_max {
            acc += sigma[r];
            beta[r] = acc;
        }
        Ok(GrowthProfile {
            center: x,
            sigma,
            beta,
        })
    }
}

/// Sphere and disk counts around one center: `sigma[r] = |S(x, r)|` and
/// `beta[r] = |D(x, r)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthProfile {
    pub center: usize,
    pub sigma: Vec<u64>,
    pub beta: Vec<u64>,
}

impl GrowthProfile {
    pub fn r_max(&self) -> usize {
        self.sigma.len() - 1
    }
}

/// Which of the elementary degree-based growth bounds a vertex violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthBound {
    /// sigma_x(1) <= Delta
    SigmaOne,
    /// sigma_x(r+1) <= sigma_x(r) * (Delta - 1), r >= 1
    SigmaStep,
    /// sigma_x(r+1) <= Delta * (Delta - 1)^r, r >= 1
    SigmaPower,
    /// beta_x(r) <= 3 * (Delta - 1)^r, requires Delta > 2
    BetaPower,
}

impl fmt::Display for GrowthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GrowthBound::SigmaOne => "sigma(1) <= Delta",
            GrowthBound::SigmaStep => "sigma(r+1) <= sigma(r)(Delta-1)",
            GrowthBound::SigmaPower => "sigma(r+1) <= Delta(Delta-1)^r",
            GrowthBound::BetaPower => "beta(r) <= 3(Delta-1)^r",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub vertex: usize,
    pub radius: usize,
    pub bound: GrowthBound,
}

/// Result of checking the elementary growth bounds on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthBoundsReport {
    pub delta: usize,
    pub r_max: usize,
    /// False when Delta <= 2 and the beta bound was skipped.
    pub beta_bound_checked: bool,
    pub violations: Vec<BoundViolation>,
}

impl GrowthBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for GrowthBoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "growth bounds up to r = {} (Delta = {}): ",
            self.r_max, self.delta
        )?;
        if self.all_hold() {
            write!(f, "all hold")?;
        } else {
            write!(f, "{} violations", self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  vertex {} at r = {}: {}", v.vertex, v.radius, v.bound)?;
            }
        }
        if !self.beta_bound_checked {
            write!(f, " (beta bound skipped: Delta <= 2)")?;
        }
        Ok(())
    }
}

/// Saturating `base^exp` in u128; saturation only makes the checked
/// inequalities weaker on absurdly large inputs, never wrongly strict.
fn sat_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Verify the elementary sphere/disk growth bounds for every vertex of a
/// connected graph up to radius `r_max`. Any violation indicates a bug in
/// the metric code, not a property of the graph.
pub fn check_basic_growth_bounds(g: &Graph, r_max: usize) -> Result<GrowthBoundsReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let delta = g.max_degree();
    let check_beta = delta > 2;
    let dm1 = delta.saturating_sub(1) as u128;
    let mut violations = Vec::new();
    for x in 0..g.n() {
        let p = g.growth_profile(x, r_max + 1)?;
        if r_max >= 1 && p.sigma[1] > delta as u64 {
            violations.push(BoundViolation {
                vertex: x,
                radius: 1,
                bound: GrowthBound::SigmaOne,
            });
        }
        for r in 1..=r_max {
            let next = p.sigma[r + 1] as u128;
            if next > (p.sigma[r] as u128).saturating_mul(dm1) {
                violations.push(BoundViolation {
                    vertex: x,
                    radius: r + 1,
                    bound: GrowthBound::SigmaStep,
                });
            }
            if next > (delta as u128).saturating_mul(sat_pow(dm1, r)) {
                violations.push(BoundViolation {
                    vertex: x,
                    radius: r + 1,
                    bound: GrowthBound::SigmaPower,
                });
            }
        }
        if check_beta {
            for r in 0..=r_max {
                if (p.beta[r] as u128) > 3u128.saturating_mul(sat_pow(dm1, r)) {
                    violations.push(BoundViolation {
                        vertex: x,
                        radius: r,
                        bound: GrowthBound::BetaPower,
                    });
                }
            }
        }
    }
    Ok(GrowthBoundsReport {
        delta,
        r_max,
        beta_bound_checked: check_beta,
        violations,
    })
}
