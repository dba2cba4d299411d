//! Separated, coarsely dense nets, the quotient graph they carry, and its
//! rooted BFS spanning tree.
//!
//! The existence proof for nets is nonconstructive; the constructive
//! stand-in admits vertices greedily in ascending index order (anchor
//! first), excluding the radius-2R disk of every admitted vertex. Any
//! maximal (2R+1)-separated set is 2R-coarsely dense, and the fixed order
//! makes the result a pure function of the input.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A (2R+1)-separated, 2R-coarsely dense vertex subset containing the
/// anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub r: usize,
    pub anchor: usize,
    /// Members in ascending vertex order.
    pub members: Vec<usize>,
}

impl Net {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a base vertex in the member list, if it is a member.
    pub fn member_index(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }
}

fn mark_disk(g: &Graph, src: usize, radius: usize, excluded: &mut [bool]) {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    excluded[src] = true;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let d = dist[v] as usize;
        if d == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = (d + 1) as u32;
                excluded[w] = true;
                queue.push_back(w);
            }
        }
    }
}

/// Greedy net selection: admit the anchor, then repeatedly the
/// smallest-index vertex not yet within distance 2R of an admitted one.
pub fn build_net(g: &Graph, r: usize, anchor: usize) -> Result<Net> {
    g.check_vertex(anchor)?;
    if r == 0 {
        return Err(Error::Parameter("net radius must be >= 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut excluded = vec![false; g.n()];
    let mut members = vec![anchor];
    mark_disk(g, anchor, 2 * r, &mut excluded);
    for v in 0..g.n() {
        if !excluded[v] {
            members.push(v);
            mark_disk(g, v, 2 * r, &mut excluded);
        }
    }
    members.sort_unstable();
    Ok(Net { r, anchor, members })
}

/// The graph on net members: two members are adjacent when their base
/// distance lies in `(0, 4R+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub members: Vec<usize>,
    pub r: usize,
    pub graph: Graph,
}

impl fmt::Display for QuotientGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quotient on {} net vertices, {} edges",
            self.graph.n(),
            self.graph.edge_count()
        )
    }
}

/// Build the quotient graph and verify the two facts it is guaranteed to
/// satisfy on a connected base: connectivity and the disk degree bound.
/// A failure here signals a bug, not bad input.
pub fn build_quotient(g: &Graph, net: &Net) -> Result<QuotientGraph> {
    let threshold = 4 * net.r + 1;
    let k = net.members.len();
    let mut edges = Vec::new();
    for i in 0..k {
        let row = g.dist_row(net.members[i])?;
        for j in i + 1..k {
            let d = row[net.members[j]];
            if d != u32::MAX && (d as usize) <= threshold {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(k, &edges)?;
    if !graph.is_connected() {
        return Err(Error::Invariant(
            "quotient of a connected base must be connected".into(),
        ));
    }
    for i in 0..k {
        let disk = g.disk(net.members[i], threshold)?.len();
        if graph.degree(i) + 1 > disk {
            return Err(Error::Invariant(format!(
                "quotient degree bound failed at net vertex {i}"
            )));
        }
    }
    Ok(QuotientGraph {
        members: net.members.clone(),
        r: net.r,
        graph,
    })
}

/// BFS spanning tree of a quotient graph with smallest-index parents.
/// Tree depth equals quotient-graph distance from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// Root as an index into the member list.
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Children lists, each ascending.
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
}

impl SpanningTree {
    /// Vertices ordered by depth, ties broken by index: the order sphere
    /// codes are assigned in.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.depth.len()).collect();
        order.sort_by_key(|&v| (self.depth[v], v));
        order
    }
}

/// Build the BFS spanning tree rooted at a net member (given as a base
/// vertex).
pub fn spanning_tree(q: &QuotientGraph, root: usize) -> Result<SpanningTree> {
    let root_idx = q
        .members
        .binary_search(&root)
        .map_err(|_| Error::Parameter(format!("root {root} is not a net member")))?;
    let n = q.graph.n();
    let mut depth = vec![usize::MAX; n];
    depth[root_idx] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root_idx);
    while let Some(v) = queue.pop_front() {
        for &w in q.graph.neighbors(v) {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if v == root_idx {
            continue;
        }
        let p = q
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| depth[u] + 1 == depth[v])
            .min()
            .ok_or_else(|| Error::Invariant(format!("net vertex {v} unreachable from root")))?;
        parent[v] = Some(p);
        children[p].push(v);
    }
    // neighbor lists are sorted, so children lists come out sorted too
    Ok(SpanningTree {
        root: root_idx,
        parent,
        children,
        depth,
    })
}
