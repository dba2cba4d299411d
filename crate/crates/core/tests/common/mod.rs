//! Shared helpers for the integration suites: a naive permutation oracle
//! independent of the library's search, and bitmask utilities for walking
//! the exhaustive small-graph corpus.

// each test binary uses its own subset of these helpers
#![allow(dead_code)]

use coarsedist::graph::Graph;

/// All permutations of `0..n` in lexicographic order.
pub fn lex_permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(avail: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if avail.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..avail.len() {
            let x = avail.remove(i);
            cur.push(x);
            rec(avail, cur, out);
            cur.pop();
            avail.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n as u8).collect(), &mut Vec::new(), &mut out);
    out
}

/// All vertex pairs `(u, v)` with `u < v` for an n-vertex graph.
pub fn index_pairs(n: usize) -> Vec<(u8, u8)> {
    let mut pairs = Vec::new();
    for u in 0..n as u8 {
        for v in u + 1..n as u8 {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Adjacency rows as bitmasks, one bit per neighbor (n <= 8).
pub fn rows_from_mask(pairs: &[(u8, u8)], mask: u32) -> [u8; 8] {
    let mut rows = [0u8; 8];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            rows[u as usize] |= 1 << v;
            rows[v as usize] |= 1 << u;
        }
    }
    rows
}

pub fn rows_from_graph(g: &Graph) -> [u8; 8] {
    assert!(g.n() <= 8);
    let mut rows = [0u8; 8];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

pub fn bitmask_connected(n: usize, rows: &[u8; 8]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut seen: u8 = 1;
    loop {
        let mut next = seen;
        for v in 0..n {
            if seen >> v & 1 == 1 {
                next |= rows[v];
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == n
}

/// The oracle: filter every permutation by adjacency preservation on all
/// vertex pairs. Exact by construction, no pruning.
pub fn naive_automorphisms(
    rows: &[u8; 8],
    pairs: &[(u8, u8)],
    perms: &[Vec<u8>],
) -> Vec<Vec<u8>> {
    perms
        .iter()
        .filter(|p| {
            pairs.iter().all(|&(u, v)| {
                let before = rows[u as usize] >> v & 1;
                let after = rows[p[u as usize] as usize] >> p[v as usize] & 1;
                before == after
            })
        })
        .cloned()
        .collect()
}

pub fn graph_from_rows(n: usize, rows: &[u8; 8]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rows[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("bitmask graphs are valid")
}

/// A rigid tree: chains of lengths 1, 2, 3 from a hub.
pub fn asymmetric_tree() -> Graph {
    Graph::new(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap()
}
