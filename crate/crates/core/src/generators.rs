//! Generators for the example families: regular-tree balls, the
//! motion ladder, the pigeonhole counterexample with its adversary, finite
//! Diestel-Leader models, gadget edge substitution, truncated free products,
//! and seeded random graphs for tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::Automorphism;

/// Hard cap on generated vertex counts; generators whose size is a
/// parameter function reject anything larger.
pub const SIZE_BUDGET: usize = 200_000;

/// Path on `n` vertices, `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter("cycle needs n >= 3".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("complete graph is always valid")
}

/// Star K_{1,k}: center 0 with `k` leaves.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    Graph::new(k + 1, &edges).expect("star is always valid")
}

/// Ball of radius `depth` in the d-regular tree, rooted at vertex 0: the
/// root has `d` children and every other internal vertex has `d - 1`.
pub fn regular_tree_ball(d: usize, depth: usize) -> Result<Graph> {
    if d < 3 {
        return Err(Error::Parameter("regular tree needs degree >= 3".into()));
    }
    let mut edges = Vec::new();
    let mut next = 1usize;
    // frontier of the previous level
    let mut frontier = vec![0usize];
    for level in 0..depth {
        let children_per = if level == 0 { d } else { d - 1 };
        let mut new_frontier = Vec::with_capacity(frontier.len() * children_per);
        for &v in &frontier {
            for _ in 0..children_per {
                if next >= SIZE_BUDGET {
                    return Err(Error::SizeBudget(format!(
                        "tree ball ({d}, {depth}) exceeds {SIZE_BUDGET} vertices"
                    )));
                }
                edges.push((v, next));
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    Graph::new(next, &edges)
}

/// The ladder with an apex: vertices `x, y_1..y_L, z_1..z_L`; edges
/// `x-y_1`, `x-z_1`, the two rails, and a rung `y_i - z_i` at every level.
/// Swapping the rails is an automorphism that moves every rail vertex a
/// distance of exactly 1.
pub fn motion_example(l: usize) -> Result<Graph> {
    if l == 0 {
        return Err(Error::Parameter("motion example needs L >= 1".into()));
    }
    let y = |i: usize| i; // 1..=l
    let z = |i: usize| l + i; // l+1..=2l
    let mut edges = vec![(0, y(1)), (0, z(1))];
    for i in 1..=l {
        edges.push((y(i), z(i)));
        if i < l {
            edges.push((y(i), y(i + 1)));
            edges.push((z(i), z(i + 1)));
        }
    }
    let mut labels = vec!["x".to_string()];
    labels.extend((1..=l).map(|i| format!("y{i}")));
    labels.extend((1..=l).map(|i| format!("z{i}")));
    Graph::new(2 * l + 1, &edges)?.with_labels(labels)
}

/// The rail swap of [`motion_example`]: `y_i <-> z_i`, apex fixed.
pub fn motion_example_swap(l: usize) -> Automorphism {
    let mut perm = vec![0usize; 2 * l + 1];
    for i in 1..=l {
        perm[i] = l + i;
        perm[l + i] = i;
    }
    Automorphism::new(perm)
}

/// The counterexample family: a spine `u_1..u_N` carrying, at each `u_n`,
/// `2^n + 1` pendant paths of length `n`. Any 2-coloring leaves two
/// identically colored copies at the deepest level, so no 2-coloring is
/// coarsely distinguishing as the spine grows.
#[derive(Debug, Clone)]
pub struct CounterexampleModel {
    pub graph: Graph,
    /// Spine vertices `u_1..u_N`, in order.
    pub spine: Vec<usize>,
    /// `copies[n-1][i]` lists the vertices `v_1..v_n` of the i-th copy of
    /// the length-n path glued at `u_n` (the glue vertex `v_0 = u_n` is not
    /// included).
    pub copies: Vec<Vec<Vec<usize>>>,
}

pub fn counterexample_graph(n_levels: usize) -> Result<CounterexampleModel> {
    if n_levels == 0 {
        return Err(Error::Parameter("counterexample needs N >= 1".into()));
    }
    let mut total = n_levels;
    for n in 1..=n_levels {
        let copies = (1usize << n) + 1;
        total += n * copies;
        if total > SIZE_BUDGET {
            return Err(Error::SizeBudget(format!(
                "counterexample N = {n_levels} exceeds {SIZE_BUDGET} vertices"
            )));
        }
    }
    let mut edges = Vec::new();
    let mut labels = Vec::with_capacity(total);
    let spine: Vec<usize> = (0..n_levels).collect();
    for n in 1..=n_levels {
        labels.push(format!("u{n}"));
        if n < n_levels {
            edges.push((n - 1, n));
        }
    }
    let mut next = n_levels;
    let mut copies = Vec::with_capacity(n_levels);
    for n in 1..=n_levels {
        let count = (1usize << n) + 1;
        let mut level = Vec::with_capacity(count);
        for i in 0..count {
            let mut copy = Vec::with_capacity(n);
            let mut prev = spine[n - 1];
            for m in 1..=n {
                edges.push((prev, next));
                labels.push(format!("I{n}.{i}.v{m}"));
                copy.push(next);
                prev = next;
                next += 1;
            }
            level.push(copy);
        }
        copies.push(level);
    }
    let graph = Graph::new(total, &edges)?.with_labels(labels)?;
    Ok(CounterexampleModel {
        graph,
        spine,
        copies,
    })
}

/// The pigeonhole adversary: given any total 2-coloring, two of the
/// deepest-level copies carry the same colors, so swapping them pointwise
/// is a color-preserving automorphism whose tips travel distance `2N`.
pub fn counterexample_adversary(
    model: &CounterexampleModel,
    phi: &Coloring,
) -> Result<Automorphism> {
    phi.check_len(model.graph.n())?;
    let deepest = model
        .copies
        .last()
        .ok_or_else(|| Error::Parameter("empty counterexample model".into()))?;
    let signature = |copy: &Vec<usize>| -> Vec<u8> { copy.iter().map(|&v| phi.get(v)).collect() };
    for i in 0..deepest.len() {
        for j in i + 1..deepest.len() {
            if signature(&deepest[i]) == signature(&deepest[j]) {
                let mut perm: Vec<usize> = (0..model.graph.n()).collect();
                for (a, b) in deepest[i].iter().zip(deepest[j].iter()) {
                    perm[*a] = *b;
                    perm[*b] = *a;
                }
                return Ok(Automorphism::new(perm));
            }
        }
    }
    // 2^N + 1 copies with at most 2^N colorings each: unreachable.
    Err(Error::Invariant(
        "pigeonhole failed to find identically colored copies".into(),
    ))
}

/// A complete rooted tree together with its level data.
#[derive(Debug, Clone)]
struct RootedTree {
    graph: Graph,
    level: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

fn complete_rooted_tree(arity: usize, depth: usize) -> Result<RootedTree> {
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut parent = vec![None];
    let mut next = 1usize;
    let mut frontier = vec![0usize];
    for lv in 1..=depth {
        let mut new_frontier = Vec::new();
        for &v in &frontier {
            for _ in 0..arity {
                if next > SIZE_BUDGET {
                    return Err(Error::SizeBudget("rooted tree too large".into()));
                }
                edges.push((v, next));
                level.push(lv);
                parent.push(Some(v));
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    let graph = Graph::new(next, &edges)?;
    let mut children = vec![Vec::new(); next];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(v);
        }
    }
    Ok(RootedTree {
        graph,
        level,
        parent,
        children,
    })
}

/// Finite horocyclic-product model of the Diestel-Leader graph DL(p, q):
/// pairs `(x, y)` of nodes of the complete p-ary and q-ary trees of depth H
/// with levels summing to H, adjacent when one coordinate steps to a child
/// while the other steps to its parent.
#[derive(Debug, Clone)]
pub struct DlModel {
    pub graph: Graph,
    /// Tree-node pair for each graph vertex, in vertex order.
    pub pairs: Vec<(usize, usize)>,
    pub tree_p: Graph,
    pub tree_q: Graph,
    pub level_p: Vec<usize>,
    pub level_q: Vec<usize>,
}

pub fn dl_model(p: usize, q: usize, h: usize) -> Result<DlModel> {
    if p < 2 || q < 2 || h < 1 {
        return Err(Error::Parameter("dl graph needs p, q >= 2 and H >= 1".into()));
    }
    let tp = complete_rooted_tree(p, h)?;
    let tq = complete_rooted_tree(q, h)?;
    let mut pairs = Vec::new();
    for x in 0..tp.graph.n() {
        for y in 0..tq.graph.n() {
            if tp.level[x] + tq.level[y] == h {
                pairs.push((x, y));
            }
        }
    }
    if pairs.len() > SIZE_BUDGET {
        return Err(Error::SizeBudget(format!(
            "DL({p},{q}) at depth {h} has {} vertices",
            pairs.len()
        )));
    }
    let index: std::collections::HashMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, &pr)| (pr, i))
        .collect();
    let mut edges = Vec::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        // x steps down to a child, y steps up to its parent
        if let Some(py) = tq.parent[y] {
            for &cx in &tp.children[x] {
                if let Some(&j) = index.get(&(cx, py)) {
                    edges.push((i, j));
                }
            }
        }
    }
    let labels = pairs.iter().map(|&(x, y)| format!("({x},{y})")).collect();
    let graph = Graph::new(pairs.len(), &edges)?.with_labels(labels)?;
    Ok(DlModel {
        graph,
        pairs,
        tree_p: tp.graph,
        tree_q: tq.graph,
        level_p: tp.level,
        level_q: tq.level,
    })
}

/// The graph of [`dl_model`] without the tree bookkeeping.
pub fn dl_graph(p: usize, q: usize, h: usize) -> Result<Graph> {
    Ok(dl_model(p, q, h)?.graph)
}

/// Attach the rigid tag at `stem`: a 5-cycle with a chord, glued at a
/// vertex the chord reflection does not fix, so the decoration has no
/// symmetry at all. No leaves and degree at most 3 inside, so it cannot be
/// confused with pendant vertices of the host graph.
fn attach_tag(edges: &mut Vec<(usize, usize)>, next: &mut usize, stem: usize) {
    let h: Vec<usize> = (0..5).map(|i| *next + i).collect();
    *next += 5;
    for i in 0..5 {
        edges.push((h[i], h[(i + 1) % 5]));
    }
    edges.push((h[0], h[2])); // chord
    edges.push((stem, h[4]));
}

/// Replace every edge of a 2-colored graph by a small rigid gadget keyed by
/// the endpoint colors. The 00- and 11-gadgets are symmetric in their
/// endpoints and mutually non-isomorphic; the 01-gadget is asymmetric and
/// marks the color-0 end. Original vertices keep their indices; gadget
/// interiors have degree at most 3.
pub fn gadget_substitute(g: &Graph, phi: &Coloring) -> Result<Graph> {
    phi.check_len(g.n())?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = g.n();
    for (a, b) in g.edges() {
        match (phi.get(a), phi.get(b)) {
            (0, 0) => {
                // a - c1 - c2 - b, tagged at both ends
                let (c1, c2) = (next, next + 1);
                next += 2;
                edges.extend([(a, c1), (c1, c2), (c2, b)]);
                attach_tag(&mut edges, &mut next, c1);
                attach_tag(&mut edges, &mut next, c2);
            }
            (1, 1) => {
                // a - c1 - c2 - c3 - b, tagged at both ends: longer spine
                // than the 00-gadget, so the two are not isomorphic
                let (c1, c2, c3) = (next, next + 1, next + 2);
                next += 3;
                edges.extend([(a, c1), (c1, c2), (c2, c3), (c3, b)]);
                attach_tag(&mut edges, &mut next, c1);
                attach_tag(&mut edges, &mut next, c3);
            }
            _ => {
                // oriented: the single tag sits next to the color-0 endpoint
                let (zero_end, one_end) = if phi.get(a) == 0 { (a, b) } else { (b, a) };
                let (c1, c2) = (next, next + 1);
                next += 2;
                edges.extend([(zero_end, c1), (c1, c2), (c2, one_end)]);
                attach_tag(&mut edges, &mut next, c1);
            }
        }
        if next > SIZE_BUDGET {
            return Err(Error::SizeBudget("gadget substitution too large".into()));
        }
    }
    Graph::new(next, &edges)
}

/// A connected graph with a chosen basepoint, the building block of free
/// products.
#[derive(Debug, Clone)]
pub struct PointedGraph {
    pub graph: Graph,
    pub basepoint: usize,
}

impl PointedGraph {
    pub fn new(graph: Graph, basepoint: usize) -> Result<PointedGraph> {
        graph.check_vertex(basepoint)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(PointedGraph { graph, basepoint })
    }
}

/// Truncated free product by iterated gluing: start from a copy of the
/// first factor; in each round, every vertex that does not yet lie in a
/// copy of factor `j` receives a fresh copy of factor `j` glued at its
/// basepoint. Runs for `rounds` rounds.
pub fn free_product_truncation(factors: &[PointedGraph], rounds: usize) -> Result<Graph> {
    if factors.len() < 2 {
        return Err(Error::Parameter("free product needs >= 2 factors".into()));
    }
    if factors.len() > 64 {
        return Err(Error::Parameter("free product supports <= 64 factors".into()));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // bit j set when the vertex already lies in a copy of factor j
    let mut membership: Vec<u64> = Vec::new();

    let first = &factors[0];
    for (u, v) in first.graph.edges() {
        edges.push((u, v));
    }
    membership.resize(first.graph.n(), 1u64);

    for _ in 0..rounds {
        let snapshot = membership.len();
        for v in 0..snapshot {
            for (j, factor) in factors.iter().enumerate() {
                if membership[v] & (1 << j) != 0 {
                    continue;
                }
                membership[v] |= 1 << j;
                // glue a fresh copy of factor j at v
                let base = membership.len();
                let fg = &factor.graph;
                let map = |w: usize| -> usize {
                    use std::cmp::Ordering::*;
                    match w.cmp(&factor.basepoint) {
                        Equal => v,
                        Less => base + w,
                        Greater => base + w - 1,
                    }
                };
                for (a, b) in fg.edges() {
                    edges.push((map(a), map(b)));
                }
                membership.resize(membership.len() + fg.n() - 1, 1u64 << j);
                if membership.len() > SIZE_BUDGET {
                    return Err(Error::SizeBudget(format!(
                        "free product truncation exceeds {SIZE_BUDGET} vertices"
                    )));
                }
            }
        }
    }
    Graph::new(membership.len(), &edges)
}

/// Outcome of the bounded longest-cycle search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxCycle {
    /// Longest simple cycle length; 0 for forests.
    Exact(usize),
    /// A cycle longer than the cutoff exists.
    ExceedsCutoff,
    /// The step budget ran out before the search finished.
    Unknown,
}

/// Length of the longest simple cycle, found by exhaustive DFS over simple
/// paths whose minimum vertex is the start. Stops early with
/// [`MaxCycle::ExceedsCutoff`] once any longer cycle appears; returns
/// [`MaxCycle::Unknown`] if `step_budget` DFS steps are exhausted, never a
/// wrong number.
pub fn max_cycle_length(g: &Graph, cutoff: usize, step_budget: u64) -> MaxCycle {
    struct Dfs<'a> {
        g: &'a Graph,
        start: usize,
        on_path: Vec<bool>,
        best: usize,
        steps: u64,
    }
    enum Stop {
        Budget,
        Cutoff,
    }
    impl Dfs<'_> {
        fn run(&mut self, v: usize, len: usize, cutoff: usize) -> std::result::Result<(), Stop> {
            for &w in self.g.neighbors(v) {
                if self.steps == 0 {
                    return Err(Stop::Budget);
                }
                self.steps -= 1;
                if w == self.start && len >= 3 {
                    if len > self.best {
                        self.best = len;
                        if self.best > cutoff {
                            return Err(Stop::Cutoff);
                        }
                    }
                } else if w > self.start && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.run(w, len + 1, cutoff)?;
                    self.on_path[w] = false;
                }
            }
            Ok(())
        }
    }
    let mut dfs = Dfs {
        g,
        start: 0,
        on_path: vec![false; g.n()],
        best: 0,
        steps: step_budget,
    };
    for s in 0..g.n() {
        dfs.start = s;
        dfs.on_path[s] = true;
        let out = dfs.run(s, 1, cutoff);
        dfs.on_path[s] = false;
        match out {
            Err(Stop::Budget) => return MaxCycle::Unknown,
            Err(Stop::Cutoff) => return MaxCycle::ExceedsCutoff,
            Ok(()) => {}
        }
    }
    MaxCycle::Exact(dfs.best)
}

/// Seeded random connected graph: a random attachment tree plus
/// `extra_edges` random chords. Deterministic in the seed.
pub fn random_connected(n: usize, extra_edges: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra_edges {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, &edges).expect("random connected construction is valid")
}

/// Seeded Erdos-Renyi graph G(n, p); may be disconnected.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("random graph construction is valid")
}
