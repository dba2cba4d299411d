//! Exact, complete automorphism enumeration (optionally color-constrained)
//! by backtracking over a degree/distance/color partition refinement,
//! plus motion statistics, stabilizers, distinguishing checks, projection
//! of automorphisms to the net quotient, and small 2-coloring searches.
//!
//! Enumeration is exact or it fails: when the step budget runs out the
//! caller gets an error, never a truncated list. Results are emitted in
//! lexicographic order of the permutation array, so the identity is always
//! first and output is independent of scheduling.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{induced_code, Coloring, RadiusSelection};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::net::{Net, QuotientGraph};

/// Default cap on backtracking steps for one enumeration call.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// A vertex permutation, used both for base-graph and quotient-graph
/// automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn new(perm: Vec<usize>) -> Automorphism {
        debug_assert!(is_bijection(&perm));
        Automorphism { perm }
    }

    pub fn try_new(perm: Vec<usize>) -> Result<Automorphism> {
        if is_bijection(&perm) {
            Ok(Automorphism { perm })
        } else {
            Err(Error::NotAnAutomorphism("not a bijection".into()))
        }
    }

    pub fn identity(n: usize) -> Automorphism {
        Automorphism {
            perm: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self . other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: other.perm.iter().map(|&v| self.perm[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            inv[x] = i;
        }
        Automorphism { perm: inv }
    }

    /// Full validity check: bijective and adjacency-preserving on `g`.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        if self.perm.len() != g.n() || !is_bijection(&self.perm) {
            return false;
        }
        for (u, v) in g.edges() {
            if !g.has_edge(self.perm[u], self.perm[v]) {
                return false;
            }
        }
        true
    }

    /// Does `phi . f = phi` hold?
    pub fn preserves(&self, phi: &Coloring) -> bool {
        self.perm.len() == phi.len()
            && (0..self.perm.len()).all(|v| phi.get(self.perm[v]) == phi.get(v))
    }
}

impl std::fmt::Display for Automorphism {
    /// Cycle notation, `id` for the identity.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut seen = vec![false; self.perm.len()];
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            write!(f, "({start}")?;
            seen[start] = true;
            let mut v = self.perm[start];
            while v != start {
                write!(f, " {v}")?;
                seen[v] = true;
                v = self.perm[v];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn is_bijection(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Vertex classes that every automorphism must preserve: the optional
/// external class, the degree, the distance histogram, and then iterated
/// neighbor-class refinement to a fixed point.
fn refine_classes(g: &Graph, external: Option<&[u32]>) -> Vec<u32> {
    let n = g.n();
    // distance histograms are quadratic to build; beyond this size rely on
    // degree/neighbor refinement alone (still exact, just less pruning)
    const PROFILE_CAP: usize = 4096;
    let mut keys: Vec<(u32, usize, Vec<(u32, u32)>)> = Vec::with_capacity(n);
    for v in 0..n {
        let ext = external.map_or(0, |e| e[v]);
        let hist = if n <= PROFILE_CAP {
            let row = g.dist_row(v).expect("vertex in range");
            let mut sorted: Vec<u32> = row.to_vec();
            sorted.sort_unstable();
            let mut hist: Vec<(u32, u32)> = Vec::new();
            for d in sorted {
                match hist.last_mut() {
                    Some(e) if e.0 == d => e.1 += 1,
                    _ => hist.push((d, 1)),
                }
            }
            hist
        } else {
            Vec::new()
        };
        keys.push((ext, g.degree(v), hist));
    }
    let mut classes = rank(&keys);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| classes[w]).collect();
                nb.sort_unstable();
                (classes[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        if next == classes {
            return classes;
        }
        classes = next;
    }
}

/// Dense ids in order of the sorted distinct keys.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).unwrap() as u32)
        .collect()
}

struct Search<'a> {
    g: &'a Graph,
    classes: Vec<u32>,
    cells: Vec<Vec<usize>>,
    /// BFS assignment order: all but the first vertex of each component
    /// have an already-mapped neighbor when their turn comes.
    order: Vec<usize>,
    mapped: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    out: Vec<Automorphism>,
    steps: u64,
    budget: u64,
}

/// BFS order over all components, smallest-index roots and frontier first.
fn bfs_assignment_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

impl Search<'_> {
    fn consistent(&self, v: usize, u: usize) -> bool {
        for &w in self.g.neighbors(v) {
            if let Some(fw) = self.mapped[w] {
                if !self.g.has_edge(u, fw) {
                    return false;
                }
            }
        }
        for &w in self.g.neighbors(u) {
            if let Some(pw) = self.inverse[w] {
                if !self.g.has_edge(v, pw) {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self, pos: usize) -> Result<()> {
        if pos == self.order.len() {
            let perm: Vec<usize> = self.mapped.iter().map(|m| m.unwrap()).collect();
            self.out.push(Automorphism { perm });
            return Ok(());
        }
        let v = self.order[pos];
        // a mapped neighbor pins the candidates down to one adjacency list
        let anchor = self
            .g
            .neighbors(v)
            .iter()
            .find_map(|&w| self.mapped[w]);
        let run = |s: &mut Self, u: usize| -> Result<()> {
            if s.inverse[u].is_some() || s.classes[u] != s.classes[v] {
                return Ok(());
            }
            s.steps += 1;
            if s.steps > s.budget {
                return Err(Error::BudgetExceeded(s.steps));
            }
            if s.consistent(v, u) {
                s.mapped[v] = Some(u);
                s.inverse[u] = Some(v);
                let r = s.descend(pos + 1);
                s.mapped[v] = None;
                s.inverse[u] = None;
                r?;
            }
            Ok(())
        };
        match anchor {
            Some(fw) => {
                // neighbor lists are sorted, so candidates come ascending
                for i in 0..self.g.neighbors(fw).len() {
                    let u = self.g.neighbors(fw)[i];
                    run(self, u)?;
                }
            }
            None => {
                let cell = self.classes[v] as usize;
                for i in 0..self.cells[cell].len() {
                    let u = self.cells[cell][i];
                    run(self, u)?;
                }
            }
        }
        Ok(())
    }
}

/// Complete list of automorphisms respecting the given vertex classes, in
/// lexicographic order (identity first).
pub(crate) fn enumerate_with_classes(
    g: &Graph,
    external: Option<&[u32]>,
    budget: u64,
) -> Result<Vec<Automorphism>> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![Automorphism::identity(0)]);
    }
    let classes = refine_classes(g, external);
    let cell_count = classes.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut cells = vec![Vec::new(); cell_count];
    for v in 0..n {
        cells[classes[v] as usize].push(v);
    }
    let mut search = Search {
        g,
        classes,
        cells,
        order: bfs_assignment_order(g),
        mapped: vec![None; n],
        inverse: vec![None; n],
        out: Vec::new(),
        steps: 0,
        budget,
    };
    search.descend(0)?;
    search.out.sort_unstable();
    Ok(search.out)
}

/// All automorphisms of `g`, or all automorphisms preserving `coloring`,
/// identity first, lexicographically ordered.
pub fn enumerate_automorphisms(
    g: &Graph,
    coloring: Option<&Coloring>,
) -> Result<Vec<Automorphism>> {
    enumerate_automorphisms_budgeted(g, coloring, DEFAULT_SEARCH_BUDGET)
}

/// As [`enumerate_automorphisms`] with an explicit step budget.
pub fn enumerate_automorphisms_budgeted(
    g: &Graph,
    coloring: Option<&Coloring>,
    budget: u64,
) -> Result<Vec<Automorphism>> {
    let classes: Option<Vec<u32>> = match coloring {
        Some(c) => {
            c.check_len(g.n())?;
            Some(c.values().iter().map(|&x| x as u32).collect())
        }
        None => None,
    };
    enumerate_with_classes(g, classes.as_deref(), budget)
}

/// Motion (non-fixed vertex count), geometric motion (max displacement),
/// and the whole displacement vector of one automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionReport {
    pub motion: u64,
    pub geometric_motion: u64,
    pub displacement: Vec<usize>,
}

pub fn motion_report(g: &Graph, f: &Automorphism) -> Result<MotionReport> {
    if !f.is_automorphism_of(g) {
        return Err(Error::NotAnAutomorphism(
            "motion report needs a valid automorphism".into(),
        ));
    }
    let mut displacement = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        match g.distance(v, f.image(v))?.finite() {
            Some(d) => displacement.push(d),
            None => return Err(Error::Disconnected),
        }
    }
    let motion = displacement.iter().filter(|&&d| d > 0).count() as u64;
    let geometric_motion = displacement.iter().copied().max().unwrap_or(0) as u64;
    Ok(MotionReport {
        motion,
        geometric_motion,
        displacement,
    })
}

/// Motion of the (color-preserving) automorphism group: the infimum of
/// motions and supremum of geometric motions over non-identity elements.
/// For the trivial group `motion` is `None` (the empty infimum) and
/// `geometric_motion` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMotion {
    pub motion: Option<u64>,
    pub geometric_motion: u64,
}

pub fn graph_motion(g: &Graph, coloring: Option<&Coloring>) -> Result<GraphMotion> {
    let autos = enumerate_automorphisms(g, coloring)?;
    let mut motion: Option<u64> = None;
    let mut gm = 0u64;
    for f in autos.iter().filter(|f| !f.is_identity()) {
        let rep = motion_report(g, f)?;
        motion = Some(motion.map_or(rep.motion, |m| m.min(rep.motion)));
        gm = gm.max(rep.geometric_motion);
    }
    Ok(GraphMotion {
        motion,
        geometric_motion: gm,
    })
}

/// The subgroup fixing `x`.
pub fn stabilizer(g: &Graph, x: usize, coloring: Option<&Coloring>) -> Result<Vec<Automorphism>> {
    g.check_vertex(x)?;
    Ok(enumerate_automorphisms(g, coloring)?
        .into_iter()
        .filter(|f| f.image(x) == x)
        .collect())
}

/// True when the only automorphism preserving `phi` is the identity.
pub fn is_distinguishing(g: &Graph, phi: &Coloring) -> Result<bool> {
    Ok(enumerate_automorphisms(g, Some(phi))?.len() == 1)
}

/// Project an automorphism of the colored base graph to the net quotient:
/// each member maps to the unique member within distance 1 of its image.
/// The projection is verified to be a quotient automorphism and, when a
/// radius selection is supplied, to preserve the induced sphere code.
pub fn project_automorphism(
    g: &Graph,
    net: &Net,
    q: &QuotientGraph,
    phi: &Coloring,
    f: &Automorphism,
    sel: Option<&RadiusSelection>,
) -> Result<Automorphism> {
    if !f.is_automorphism_of(g) || !f.preserves(phi) {
        return Err(Error::NotAnAutomorphism(
            "projection needs an element of Aut(g, phi)".into(),
        ));
    }
    let k = net.members.len();
    let mut perm = Vec::with_capacity(k);
    for &y in &net.members {
        let fy = f.image(y);
        let mut near: Vec<usize> = Vec::new();
        if let Some(i) = net.member_index(fy) {
            near.push(i);
        }
        for &w in g.neighbors(fy) {
            if let Some(i) = net.member_index(w) {
                near.push(i);
            }
        }
        match near.as_slice() {
            [i] => perm.push(*i),
            [] => return Err(Error::ProjectionFailed(y)),
            _ => {
                return Err(Error::Invariant(format!(
                    "separation violated: several members within distance 1 of {fy}"
                )))
            }
        }
    }
    let bar = Automorphism::try_new(perm).map_err(|_| Error::ProjectionNotAutomorphism)?;
    if !bar.is_automorphism_of(&q.graph) {
        return Err(Error::ProjectionNotAutomorphism);
    }
    if let Some(sel) = sel {
        let code = induced_code(g, net, phi, sel)?;
        for i in 0..k {
            if code.codes[bar.image(i)] != code.codes[i] {
                return Err(Error::ProjectionNotAutomorphism);
            }
        }
    }
    Ok(bar)
}

/// Comparison of the group's geometric motion against a bound.
#[derive(Debug, Clone)]
pub struct CoarseBoundReport {
    pub bound: u64,
    pub group_size: usize,
    pub max_geometric_motion: u64,
    pub violators: Vec<Automorphism>,
}

impl CoarseBoundReport {
    pub fn passes(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Check `gm(f) <= bound` for every (color-preserving) automorphism.
pub fn check_coarse_bound(
    g: &Graph,
    coloring: Option<&Coloring>,
    bound: u64,
) -> Result<CoarseBoundReport> {
    let autos = enumerate_automorphisms(g, coloring)?;
    let mut max_gm = 0;
    let mut violators = Vec::new();
    for f in &autos {
        let rep = motion_report(g, f)?;
        max_gm = max_gm.max(rep.geometric_motion);
        if rep.geometric_motion > bound {
            violators.push(f.clone());
        }
    }
    Ok(CoarseBoundReport {
        bound,
        group_size: autos.len(),
        max_geometric_motion: max_gm,
        violators,
    })
}

/// How to look for a distinguishing 2-coloring.
#[derive(Debug, Clone, Copy)]
pub enum SearchMode {
    /// Try all `2^n` colorings; definitive.
    Exhaustive,
    /// Try seeded uniform random colorings.
    Randomized { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Coloring),
    /// Exhaustive search proved none exists.
    NoneExists,
    /// Randomized budget ran out.
    Unknown,
}

const EXHAUSTIVE_VERTEX_CAP: usize = 24;

/// Search for a distinguishing 2-coloring.
pub fn search_distinguishing_2coloring(g: &Graph, mode: SearchMode) -> Result<SearchOutcome> {
    let autos = enumerate_automorphisms(g, None)?;
    let nontrivial: Vec<&Automorphism> = autos.iter().filter(|f| !f.is_identity()).collect();
    if nontrivial.is_empty() {
        return Ok(SearchOutcome::Found(Coloring::constant(g.n(), 0)));
    }
    let distinguishes = |values: &[u8]| -> bool {
        nontrivial
            .iter()
            .all(|f| (0..g.n()).any(|v| values[f.image(v)] != values[v]))
    };
    match mode {
        SearchMode::Exhaustive => {
            if g.n() > EXHAUSTIVE_VERTEX_CAP {
                return Err(Error::SizeBudget(format!(
                    "exhaustive 2-coloring search capped at {EXHAUSTIVE_VERTEX_CAP} vertices"
                )));
            }
            let mut values = vec![0u8; g.n()];
            for mask in 0u64..(1u64 << g.n()) {
                for (v, val) in values.iter_mut().enumerate() {
                    *val = ((mask >> v) & 1) as u8;
                }
                if distinguishes(&values) {
                    return Ok(SearchOutcome::Found(Coloring::new(values)?));
                }
            }
            Ok(SearchOutcome::NoneExists)
        }
        SearchMode::Randomized { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let values: Vec<u8> = (0..g.n()).map(|_| rng.gen_range(0..2u8)).collect();
                if distinguishes(&values) {
                    return Ok(SearchOutcome::Found(Coloring::new(values)?));
                }
            }
            Ok(SearchOutcome::Unknown)
        }
    }
}

/// Outcome of testing the motion lemma hypothesis `2^m >= |Aut|^2` and, when
/// it holds, sampling random 2-colorings until a distinguishing one shows
/// up.
#[derive(Debug, Clone)]
pub struct MotionLemmaReport {
    pub aut_order: u64,
    /// `None` encodes infinite motion (trivial group).
    pub motion: Option<u64>,
    pub hypothesis_met: bool,
    /// Number of samples drawn to reach the witness, when the hypothesis
    /// was met and sampling succeeded within the cap.
    pub samples_used: Option<u64>,
    pub witness: Option<Coloring>,
}

pub fn motion_lemma_check(g: &Graph, max_samples: u64, seed: u64) -> Result<MotionLemmaReport> {
    let autos = enumerate_automorphisms(g, None)?;
    let aut_order = autos.len() as u64;
    let nontrivial: Vec<&Automorphism> = autos.iter().filter(|f| !f.is_identity()).collect();
    let motion = nontrivial
        .iter()
        .map(|f| motion_report(g, f).map(|r| r.motion))
        .try_fold(None::<u64>, |acc, m| {
            m.map(|m| Some(acc.map_or(m, |a| a.min(m))))
        })?;
    let hypothesis_met = match motion {
        None => true,
        Some(m) => {
            let lhs = BigUint::one() << (m as usize).min(1 << 20);
            let order = BigUint::from(aut_order);
            lhs >= &order * &order
        }
    };
    if !hypothesis_met {
        return Ok(MotionLemmaReport {
            aut_order,
            motion,
            hypothesis_met,
            samples_used: None,
            witness: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 1..=max_samples {
        let values: Vec<u8> = (0..g.n()).map(|_| rng.gen_range(0..2u8)).collect();
        let ok = nontrivial
            .iter()
            .all(|f| (0..g.n()).any(|v| values[f.image(v)] != values[v]));
        if ok {
            return Ok(MotionLemmaReport {
                aut_order,
                motion,
                hypothesis_met,
                samples_used: Some(k),
                witness: Some(Coloring::new(values)?),
            });
        }
    }
    Ok(MotionLemmaReport {
        aut_order,
        motion,
        hypothesis_met,
        samples_used: None,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    /// All permutations of 0..n in lexicographic order; test oracle only.
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(avail: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
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
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
        out
    }

    fn naive_autos(g: &Graph, coloring: Option<&Coloring>) -> Vec<Vec<usize>> {
        all_perms(g.n())
            .into_iter()
            .filter(|p| {
                if let Some(c) = coloring {
                    if (0..g.n()).any(|v| c.get(p[v]) != c.get(v)) {
                        return false;
                    }
                }
                for u in 0..g.n() {
                    for v in u + 1..g.n() {
                        if g.has_edge(u, v) != g.has_edge(p[u], p[v]) {
                            return false;
                        }
                    }
                }
                true
            })
            .collect()
    }

    fn asymmetric_tree() -> Graph {
        // chains of lengths 1, 2, 3 from a center: no symmetry at all
        Graph::new(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn counts_on_small_graphs() {
        let c4 = generators::cycle(4).unwrap();
        assert_eq!(enumerate_automorphisms(&c4, None).unwrap().len(), 8);
        let p3 = generators::path(3).unwrap();
        assert_eq!(enumerate_automorphisms(&p3, None).unwrap().len(), 2);
        assert_eq!(enumerate_automorphisms(&asymmetric_tree(), None).unwrap().len(), 1);
    }

    #[test]
    fn color_constrained_counts() {
        let c4 = generators::cycle(4).unwrap();
        let phi = Coloring::new(vec![0, 1, 0, 1]).unwrap();
        let autos = enumerate_automorphisms(&c4, Some(&phi)).unwrap();
        assert_eq!(autos.len(), 4);
        for f in &autos {
            assert!(f.preserves(&phi));
        }
    }

    #[test]
    fn identity_comes_first() {
        let c6 = generators::cycle(6).unwrap();
        let autos = enumerate_automorphisms(&c6, None).unwrap();
        assert!(autos[0].is_identity());
        assert_eq!(autos.len(), 12);
    }

    #[test]
    fn matches_naive_filtering_on_small_corpus() {
        // every graph on up to 5 labeled vertices, connected or not
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges).unwrap();
                let fast: Vec<Vec<usize>> = enumerate_automorphisms(&g, None)
                    .unwrap()
                    .into_iter()
                    .map(|a| a.as_slice().to_vec())
                    .collect();
                assert_eq!(fast, naive_autos(&g, None), "n = {n}, mask = {mask}");
            }
        }
    }

    #[test]
    fn matches_naive_filtering_with_colors() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..30u64 {
            let g = generators::random_graph(6, 0.4, seed);
            let phi =
                Coloring::new((0..g.n()).map(|_| rng.gen_range(0..2u8)).collect()).unwrap();
            let fast: Vec<Vec<usize>> = enumerate_automorphisms(&g, Some(&phi))
                .unwrap()
                .into_iter()
                .map(|a| a.as_slice().to_vec())
                .collect();
            assert_eq!(fast, naive_autos(&g, Some(&phi)), "seed {seed}");
        }
    }

    #[test]
    fn group_laws_hold() {
        let g = generators::random_connected(9, 5, 2);
        let autos = enumerate_automorphisms(&g, None).unwrap();
        let set: std::collections::HashSet<Vec<usize>> =
            autos.iter().map(|a| a.as_slice().to_vec()).collect();
        assert!(set.contains(&Automorphism::identity(g.n()).as_slice().to_vec()));
        for a in &autos {
            assert!(set.contains(&a.inverse().as_slice().to_vec()));
            for b in &autos {
                assert!(set.contains(&a.compose(b).as_slice().to_vec()));
            }
        }
    }

    #[test]
    fn color_filter_is_consistent() {
        let c6 = generators::cycle(6).unwrap();
        let phi = Coloring::new(vec![0, 0, 1, 0, 1, 1]).unwrap();
        let all = enumerate_automorphisms(&c6, None).unwrap();
        let filtered: Vec<_> = all.into_iter().filter(|f| f.preserves(&phi)).collect();
        let constrained = enumerate_automorphisms(&c6, Some(&phi)).unwrap();
        assert_eq!(filtered, constrained);
    }

    #[test]
    fn motion_reports() {
        let c4 = generators::cycle(4).unwrap();
        let id = Automorphism::identity(4);
        let rep = motion_report(&c4, &id).unwrap();
        assert_eq!((rep.motion, rep.geometric_motion), (0, 0));
        let rot = Automorphism::new(vec![1, 2, 3, 0]);
        let rep = motion_report(&c4, &rot).unwrap();
        assert_eq!((rep.motion, rep.geometric_motion), (4, 1));
        let p3 = generators::path(3).unwrap();
        let refl = Automorphism::new(vec![2, 1, 0]);
        let rep = motion_report(&p3, &refl).unwrap();
        assert_eq!((rep.motion, rep.geometric_motion), (2, 2));
    }

    #[test]
    fn motion_of_small_graphs() {
        let p3 = generators::path(3).unwrap();
        let m = graph_motion(&p3, None).unwrap();
        assert_eq!(m.motion, Some(2));
        assert_eq!(m.geometric_motion, 2);
        let asym = asymmetric_tree();
        let m = graph_motion(&asym, None).unwrap();
        assert_eq!(m.motion, None);
        assert_eq!(m.geometric_motion, 0);
    }

    #[test]
    fn ladder_group_is_exactly_the_swap() {
        let g = generators::motion_example(5).unwrap();
        let autos = enumerate_automorphisms(&g, None).unwrap();
        assert_eq!(autos.len(), 2);
        assert_eq!(autos[1], generators::motion_example_swap(5));
        let m = graph_motion(&g, None).unwrap();
        assert_eq!(m.motion, Some(10));
        assert_eq!(m.geometric_motion, 1);
    }

    #[test]
    fn stabilizers() {
        let c4 = generators::cycle(4).unwrap();
        assert_eq!(stabilizer(&c4, 0, None).unwrap().len(), 2);
        let k4 = generators::complete(4);
        assert_eq!(stabilizer(&k4, 2, None).unwrap().len(), 6);
    }

    #[test]
    fn dl_stabilizer_geometric_motion_grows() {
        // swapping the deepest subtrees on one side displaces the opposite
        // boundary by the full height, twice
        let mut gms = Vec::new();
        for h in 1..=3usize {
            let m = generators::dl_model(2, 2, h).unwrap();
            let stab = stabilizer(&m.graph, 0, None).unwrap();
            let gm = stab
                .iter()
                .filter(|f| !f.is_identity())
                .map(|f| motion_report(&m.graph, f).unwrap().geometric_motion)
                .max()
                .unwrap_or(0);
            gms.push(gm);
        }
        assert_eq!(gms, vec![2, 4, 6]);
    }

    #[test]
    fn colored_motion_on_cycle() {
        let c4 = generators::cycle(4).unwrap();
        let phi = Coloring::new(vec![0, 1, 0, 1]).unwrap();
        let m = graph_motion(&c4, Some(&phi)).unwrap();
        // reflections through two vertices survive and move two vertices;
        // the antipodal rotation moves everything a distance 2
        assert_eq!(m.motion, Some(2));
        assert_eq!(m.geometric_motion, 2);
    }

    #[test]
    fn distinguishing_checks() {
        let p3 = generators::path(3).unwrap();
        assert!(is_distinguishing(&p3, &Coloring::new(vec![0, 0, 1]).unwrap()).unwrap());
        let c4 = generators::cycle(4).unwrap();
        for mask in 0u8..16 {
            let phi = Coloring::new((0..4).map(|v| mask >> v & 1).collect()).unwrap();
            assert!(!is_distinguishing(&c4, &phi).unwrap());
        }
        let asym = asymmetric_tree();
        assert!(is_distinguishing(&asym, &Coloring::constant(7, 0)).unwrap());
    }

    #[test]
    fn coarse_bound_reports() {
        let g = generators::motion_example(4).unwrap();
        let rep = check_coarse_bound(&g, None, 1).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.max_geometric_motion, 1);
        let rep = check_coarse_bound(&g, None, 0).unwrap();
        assert!(!rep.passes());
        assert_eq!(rep.violators.len(), 1);
    }

    #[test]
    fn projection_of_identity_is_identity() {
        let c = generators::cycle(200).unwrap();
        let net = crate::net::build_net(&c, 9, 0).unwrap();
        let q = crate::net::build_quotient(&c, &net).unwrap();
        let phi = Coloring::constant(200, 0);
        let id = Automorphism::identity(200);
        let bar = project_automorphism(&c, &net, &q, &phi, &id, None).unwrap();
        assert!(bar.is_identity());
    }

    #[test]
    fn adversary_projection_moves_the_net() {
        use rand::{Rng, SeedableRng};
        let model = generators::counterexample_graph(2).unwrap();
        let g = &model.graph;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = Coloring::new((0..g.n()).map(|_| rng.gen_range(0..2u8)).collect()).unwrap();
        let f = generators::counterexample_adversary(&model, &phi).unwrap();
        let net = crate::net::build_net(g, 1, 0).unwrap();
        // the five deep tips and the far spine end are all members
        assert_eq!(net.members.len(), 6);
        let q = crate::net::build_quotient(g, &net).unwrap();
        let bar = project_automorphism(g, &net, &q, &phi, &f, None).unwrap();
        assert!(!bar.is_identity());
        assert!(bar.is_automorphism_of(&q.graph));
    }

    #[test]
    fn exhaustive_coloring_search() {
        let c4 = generators::cycle(4).unwrap();
        assert_eq!(
            search_distinguishing_2coloring(&c4, SearchMode::Exhaustive).unwrap(),
            SearchOutcome::NoneExists
        );
        let c6 = generators::cycle(6).unwrap();
        match search_distinguishing_2coloring(&c6, SearchMode::Exhaustive).unwrap() {
            SearchOutcome::Found(phi) => assert!(is_distinguishing(&c6, &phi).unwrap()),
            other => panic!("expected a coloring, got {other:?}"),
        }
        let asym = asymmetric_tree();
        assert_eq!(
            search_distinguishing_2coloring(&asym, SearchMode::Exhaustive).unwrap(),
            SearchOutcome::Found(Coloring::constant(7, 0))
        );
    }

    #[test]
    fn motion_lemma_reports() {
        let c4 = generators::cycle(4).unwrap();
        let rep = motion_lemma_check(&c4, 100, 1).unwrap();
        assert!(!rep.hypothesis_met); // 2^2 < 8^2
        assert_eq!(rep.motion, Some(2));
        assert_eq!(rep.aut_order, 8);

        let asym = asymmetric_tree();
        let rep = motion_lemma_check(&asym, 100, 1).unwrap();
        assert!(rep.hypothesis_met);
        assert_eq!(rep.samples_used, Some(1));

        let ladder = generators::motion_example(8).unwrap();
        let rep = motion_lemma_check(&ladder, 1000, 7).unwrap();
        assert!(rep.hypothesis_met); // 2^16 >= 2^2
        let witness = rep.witness.expect("sampling must succeed");
        assert!(is_distinguishing(&ladder, &witness).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let k7 = generators::complete(7);
        assert!(matches!(
            enumerate_automorphisms_budgeted(&k7, None, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn cycle_notation_display() {
        let f = Automorphism::new(vec![1, 0, 2, 4, 3]);
        assert_eq!(f.to_string(), "(0 1)(3 4)");
        assert_eq!(Automorphism::identity(3).to_string(), "id");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Automorphism::try_new(vec![0, 0, 1]).is_err());
        assert!(Automorphism::try_new(vec![0, 3]).is_err());
        assert!(Automorphism::try_new(vec![2, 0, 1]).is_ok());
        let p3 = generators::path(3).unwrap();
        assert!(!Automorphism::new(vec![1, 0, 2]).is_automorphism_of(&p3));
    }
}
