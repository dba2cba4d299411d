//! The coloring pipeline: radius selection by the exact sphere-product
//! inequality, the partial coloring psi determined by distance to the net,
//! sphere codes xi on net vertices, their realization phi, and the induced
//! code read back from a total coloring.
//!
//! Every stage breaks ties by smallest index, so the whole pipeline is a
//! pure function of the input graph.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::growth::GrowthFormula;
use crate::net::{build_net, build_quotient, spanning_tree, Net, SpanningTree};
use crate::symmetry;

/// A total 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    values: Vec<u8>,
}

impl Coloring {
    pub fn new(values: Vec<u8>) -> Result<Coloring> {
        if let Some(&bad) = values.iter().find(|&&v| v > 1) {
            return Err(Error::BadColorValue(bad));
        }
        Ok(Coloring { values })
    }

    pub fn constant(n: usize, value: u8) -> Coloring {
        assert!(value <= 1);
        Coloring {
            values: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.values[v]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::ColoringLength {
                got: self.len(),
                expected: n,
            })
        }
    }
}

/// A 2-coloring defined away from the free spheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    values: Vec<Option<u8>>,
}

impl PartialColoring {
    pub fn new(values: Vec<Option<u8>>) -> Result<PartialColoring> {
        if let Some(bad) = values.iter().flatten().find(|&&v| v > 1) {
            return Err(Error::BadColorValue(*bad));
        }
        Ok(PartialColoring { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.values[v]
    }

    pub fn values(&self) -> &[Option<u8>] {
        &self.values
    }

    pub fn undefined_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// The radius classes cut out of `{0, ..., R}`: `A` holds the even radii
/// `4..=R-1`, `B` the odd radii `3..=R`; radii 0, 1, 2 are handled
/// separately by psi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusSelection {
    pub r: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Split `{0..=R}` into the psi radii and the free radii `B`.
pub fn ab_sets(r: usize) -> Result<RadiusSelection> {
    if r < 5 || r % 2 == 0 {
        return Err(Error::InvalidRadius(r));
    }
    let a: Vec<usize> = (2..=(r - 1) / 2).map(|n| 2 * n).collect();
    let b: Vec<usize> = (1..=(r - 1) / 2).map(|n| 2 * n + 1).collect();
    Ok(RadiusSelection { r, a, b })
}

/// Does `prod_{r in B}(sigma(r) + 1) > beta(4R+1)` hold, given exact sigma
/// and beta values?
fn product_inequality(sigma_b: &[BigUint], beta: &BigUint) -> bool {
    let mut prod = BigUint::one();
    for s in sigma_b {
        prod *= s + 1u32;
    }
    prod > *beta
}

fn candidate_radii(cap: usize) -> impl Iterator<Item = usize> {
    (5..=cap).filter(|r| r % 2 == 1)
}

/// Smallest odd `R >= 5` such that the sphere-product inequality holds at
/// every vertex of `g`.
pub fn choose_r_strict(g: &Graph, cap: usize) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    choose_r_filtered(g, cap, |_, _| true)
}

/// Result of the interior-mode radius search: vertices within `4R+1` of the
/// declared boundary are exempt from the inequality and counted as residual
/// risk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorRadius {
    pub r: usize,
    pub checked: usize,
    pub exempt: usize,
}

/// Smallest odd `R >= 5` such that the inequality holds at every vertex
/// farther than `4R+1` from the boundary set.
pub fn choose_r_interior(g: &Graph, boundary: &[usize], cap: usize) -> Result<InteriorRadius> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bdist = g.multi_source_distances(boundary)?;
    let r = choose_r_filtered(g, cap, |x, r| {
        let d = bdist[x];
        d == u32::MAX || d as usize > 4 * r + 1
    })?;
    let exempt = bdist
        .iter()
        .filter(|&&d| d != u32::MAX && (d as usize) <= 4 * r + 1)
        .count();
    Ok(InteriorRadius {
        r,
        checked: g.n() - exempt,
        exempt,
    })
}

fn choose_r_filtered(
    g: &Graph,
    cap: usize,
    include: impl Fn(usize, usize) -> bool,
) -> Result<usize> {
    let mut worst = 0usize;
    for r in candidate_radii(cap) {
        let sel = ab_sets(r)?;
        let reach = 4 * r + 1;
        let mut ok = true;
        let mut worst_deficit = BigUint::from(0u32);
        for x in 0..g.n() {
            if !include(x, r) {
                continue;
            }
            let p = g.growth_profile(x, reach)?;
            let sigma_b: Vec<BigUint> = sel.b.iter().map(|&b| BigUint::from(p.sigma[b])).collect();
            let beta = BigUint::from(p.beta[reach]);
            if !product_inequality(&sigma_b, &beta) {
                ok = false;
                let mut prod = BigUint::one();
                for s in &sigma_b {
                    prod *= s + 1u32;
                }
                let deficit = &beta - &prod + 1u32; // product <= beta here
                if deficit > worst_deficit {
                    worst_deficit = deficit;
                    worst = x;
                }
            }
        }
        if ok {
            return Ok(r);
        }
    }
    Err(Error::NoValidRadius {
        cap,
        worst_vertex: worst,
    })
}

/// Smallest odd `R >= 5` for a closed-form growth family.
pub fn choose_r_formula(formula: &GrowthFormula, cap: usize) -> Result<usize> {
    for r in candidate_radii(cap) {
        let sel = ab_sets(r)?;
        let sigma_b: Vec<BigUint> = sel.b.iter().map(|&b| formula.sigma(b as u64)).collect();
        let beta = formula.beta(4 * r as u64 + 1);
        if product_inequality(&sigma_b, &beta) {
            return Ok(r);
        }
    }
    Err(Error::NoValidRadius {
        cap,
        worst_vertex: 0,
    })
}

/// The partial coloring determined by distance to the net: 0 on the net and
/// its unit sphere, 1 on the radius-2 sphere, on every even sphere in `A`,
/// and outside the radius-R disk; undefined exactly on the odd spheres in
/// `B`.
pub fn build_psi(g: &Graph, net: &Net, sel: &RadiusSelection) -> Result<PartialColoring> {
    if net.r != sel.r {
        return Err(Error::RadiusMismatch {
            net: net.r,
            selection: sel.r,
        });
    }
    let dist = g.multi_source_distances(&net.members)?;
    let values = dist
        .iter()
        .map(|&d| {
            let d = d as usize;
            match d {
                0 | 1 => Some(0),
                2 => Some(1),
                d if d > sel.r => Some(1),
                d if d % 2 == 1 => None, // in B
                _ => Some(1),            // in A
            }
        })
        .collect();
    PartialColoring::new(values)
}

/// Per-net-vertex tuples counting the color-1 vertices to be placed on each
/// free sphere, indexed by ascending radius in `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereCode {
    /// The radii in `B`, ascending.
    pub radii: Vec<usize>,
    /// `codes[i][k]` ones on the sphere of radius `radii[k]` around member `i`.
    pub codes: Vec<Vec<u64>>,
}

/// How sphere codes are kept distinct during assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiStrategy {
    /// Children of the same tree vertex get pairwise distinct codes.
    SiblingDistinct,
    /// All vertices at the same tree depth get pairwise distinct codes.
    LevelDistinct,
}

impl fmt::Display for XiStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XiStrategy::SiblingDistinct => write!(f, "sibling-distinct"),
            XiStrategy::LevelDistinct => write!(f, "level-distinct"),
        }
    }
}

/// Next tuple in ascending lexicographic order (first coordinate most
/// significant), bounded per coordinate; `None` once exhausted.
fn odometer_step(code: &mut [u64], caps: &[u64]) -> Option<()> {
    for i in (0..code.len()).rev() {
        if code[i] < caps[i] {
            code[i] += 1;
            for c in &mut code[i + 1..] {
                *c = 0;
            }
            return Some(());
        }
    }
    None
}

fn saturating_code_count(caps: &[u64]) -> u64 {
    let mut prod: u64 = 1;
    for &c in caps {
        prod = prod.saturating_mul(c + 1);
    }
    prod.saturating_sub(1) // nonzero tuples
}

/// Assign sphere codes in BFS order: the root gets the all-zero tuple and
/// every other vertex the lexicographically smallest nonzero tuple within
/// sphere capacity that no conflicting vertex (sibling or level peer,
/// depending on strategy) already holds.
pub fn build_xi(
    g: &Graph,
    net: &Net,
    tree: &SpanningTree,
    sel: &RadiusSelection,
    strategy: XiStrategy,
) -> Result<SphereCode> {
    Ok(build_xi_with_margin(g, net, tree, sel, strategy)?.0)
}

pub(crate) fn build_xi_with_margin(
    g: &Graph,
    net: &Net,
    tree: &SpanningTree,
    sel: &RadiusSelection,
    strategy: XiStrategy,
) -> Result<(SphereCode, Option<u64>)> {
    let k = net.members.len();
    let max_b = sel.b.last().copied().unwrap_or(0);
    let mut caps: Vec<Vec<u64>> = Vec::with_capacity(k);
    for &y in &net.members {
        let p = g.growth_profile(y, max_b)?;
        caps.push(sel.b.iter().map(|&b| p.sigma[b]).collect());
    }
    let mut codes: Vec<Option<Vec<u64>>> = vec![None; k];
    let mut margin: Option<u64> = None;
    for v in tree.bfs_order() {
        if v == tree.root {
            codes[v] = Some(vec![0; sel.b.len()]);
            continue;
        }
        let conflicts: Vec<&Vec<u64>> = match strategy {
            XiStrategy::SiblingDistinct => {
                let parent = tree.parent[v].expect("non-root has a parent");
                tree.children[parent]
                    .iter()
                    .filter_map(|&s| codes[s].as_ref())
                    .collect()
            }
            XiStrategy::LevelDistinct => (0..k)
                .filter(|&u| tree.depth[u] == tree.depth[v])
                .filter_map(|u| codes[u].as_ref())
                .collect(),
        };
        let available = saturating_code_count(&caps[v]);
        let spare = available.saturating_sub(conflicts.len() as u64 + 1);
        margin = Some(margin.map_or(spare, |m| m.min(spare)));
        let mut code = vec![0u64; sel.b.len()];
        loop {
            if odometer_step(&mut code, &caps[v]).is_none() {
                return Err(Error::CapacityExceeded {
                    net_index: v,
                    base_vertex: net.members[v],
                    needed: conflicts.len() as u64 + 1,
                    available,
                });
            }
            if !conflicts.iter().any(|c| **c == code) {
                break;
            }
        }
        codes[v] = Some(code);
    }
    let codes: Vec<Vec<u64>> = codes.into_iter().map(|c| c.expect("assigned")).collect();
    Ok((
        SphereCode {
            radii: sel.b.clone(),
            codes,
        },
        margin,
    ))
}

/// Extend psi to a total coloring realizing the sphere code: on each free
/// sphere the prescribed number of smallest-index vertices get color 1.
pub fn realize_phi(
    g: &Graph,
    net: &Net,
    psi: &PartialColoring,
    xi: &SphereCode,
) -> Result<Coloring> {
    if psi.len() != g.n() {
        return Err(Error::ColoringLength {
            got: psi.len(),
            expected: g.n(),
        });
    }
    let mut values: Vec<Option<u8>> = psi.values().to_vec();
    for (i, &y) in net.members.iter().enumerate() {
        for (k, &r) in xi.radii.iter().enumerate() {
            let sphere = g.sphere(y, r)?;
            let ones = xi.codes[i][k];
            if ones > sphere.len() as u64 {
                return Err(Error::CodeOverflow {
                    net_index: i,
                    assigned: ones,
                    sphere: sphere.len(),
                });
            }
            for (pos, &v) in sphere.iter().enumerate() {
                debug_assert!(values[v].is_none(), "free spheres must be undefined in psi");
                values[v] = Some(if (pos as u64) < ones { 1 } else { 0 });
            }
        }
    }
    let total: Option<Vec<u8>> = values.into_iter().collect();
    match total {
        Some(v) => Coloring::new(v),
        None => Err(Error::Invariant(
            "psi left vertices undefined outside the free spheres".into(),
        )),
    }
}

/// Count the ones a total coloring places on each free sphere of each net
/// vertex.
pub fn induced_code(
    g: &Graph,
    net: &Net,
    phi: &Coloring,
    sel: &RadiusSelection,
) -> Result<SphereCode> {
    phi.check_len(g.n())?;
    let mut codes = Vec::with_capacity(net.members.len());
    for &y in &net.members {
        let mut tuple = Vec::with_capacity(sel.b.len());
        for &r in &sel.b {
            let ones = g
                .sphere(y, r)?
                .iter()
                .filter(|&&v| phi.get(v) == 1)
                .count() as u64;
            tuple.push(ones);
        }
        codes.push(tuple);
    }
    Ok(SphereCode {
        radii: sel.b.clone(),
        codes,
    })
}

/// Options for the end-to-end pipeline.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    /// Largest odd R the radius search will try.
    pub r_cap: usize,
    /// Also enumerate `Aut(g, phi)` and report the geometric-motion bound.
    pub verify: bool,
    /// Step budget for automorphism enumeration.
    pub budget: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            r_cap: 41,
            verify: false,
            budget: symmetry::DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// What the pipeline did and what it can promise.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub r: usize,
    pub net_size: usize,
    pub xi_strategy: XiStrategy,
    /// Whether the sphere code is a distinguishing coloring of the quotient
    /// graph; when true, every phi-preserving automorphism moves each
    /// vertex at most `4R+1`.
    pub quotient_distinguishing: bool,
    /// Minimum spare code count over non-root net vertices; `None` for a
    /// one-vertex net.
    pub capacity_margin: Option<u64>,
    /// Present when verification was requested: the enumeration-backed
    /// geometric-motion check against `4R+1`.
    pub verification: Option<symmetry::CoarseBoundReport>,
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R = {}, net size = {}, xi strategy = {}, quotient distinguishing = {}",
            self.r, self.net_size, self.xi_strategy, self.quotient_distinguishing
        )?;
        match self.capacity_margin {
            Some(m) => write!(f, ", capacity margin = {m}")?,
            None => write!(f, ", capacity margin = n/a")?,
        }
        if let Some(v) = &self.verification {
            write!(
                f,
                "; verified max gm = {} against bound {} over {} automorphisms ({})",
                v.max_geometric_motion,
                v.bound,
                v.group_size,
                if v.passes() { "pass" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub coloring: Coloring,
    pub psi: PartialColoring,
    pub net: Net,
    pub report: PipelineReport,
}

/// Run the full construction: net, quotient, spanning tree, psi, xi, phi.
/// With `r = None` the strict radius search picks R (a one-vertex graph
/// degenerates to R = 5). The sphere code is checked to be distinguishing
/// on the quotient; if the sibling-distinct assignment is not, the
/// level-distinct escalation is tried, capacity permitting.
pub fn coarse_color_pipeline(
    g: &Graph,
    r: Option<usize>,
    opts: &PipelineOptions,
) -> Result<PipelineOutcome> {
    if g.n() == 0 {
        return Err(Error::Parameter("pipeline needs a nonempty graph".into()));
    }
    let r = match r {
        Some(r) => r,
        None if g.n() == 1 => 5,
        None => choose_r_strict(g, opts.r_cap)?,
    };
    let sel = ab_sets(r)?;
    let anchor = 0;
    let net = build_net(g, r, anchor)?;
    let quotient = build_quotient(g, &net)?;
    let tree = spanning_tree(&quotient, anchor)?;
    let psi = build_psi(g, &net, &sel)?;

    let code_distinguishing = |xi: &SphereCode| -> Result<bool> {
        let classes = code_classes(xi);
        let autos = symmetry::enumerate_with_classes(&quotient.graph, Some(&classes), opts.budget)?;
        Ok(autos.len() == 1)
    };

    let (mut xi, mut margin) =
        build_xi_with_margin(g, &net, &tree, &sel, XiStrategy::SiblingDistinct)?;
    let mut strategy = XiStrategy::SiblingDistinct;
    let mut distinguishing = code_distinguishing(&xi)?;
    if !distinguishing {
        match build_xi_with_margin(g, &net, &tree, &sel, XiStrategy::LevelDistinct) {
            Ok((xi2, margin2)) => {
                strategy = XiStrategy::LevelDistinct;
                distinguishing = code_distinguishing(&xi2)?;
                xi = xi2;
                margin = margin2;
            }
            Err(Error::CapacityExceeded { .. }) => {
                // keep the sibling assignment and report the residual risk
            }
            Err(e) => return Err(e),
        }
    }

    let coloring = realize_phi(g, &net, &psi, &xi)?;
    let verification = if opts.verify {
        Some(symmetry::check_coarse_bound(
            g,
            Some(&coloring),
            4 * r as u64 + 1,
        )?)
    } else {
        None
    };
    Ok(PipelineOutcome {
        coloring,
        psi,
        report: PipelineReport {
            r,
            net_size: net.len(),
            xi_strategy: strategy,
            quotient_distinguishing: distinguishing,
            capacity_margin: margin,
            verification,
        },
        net,
    })
}

/// Dense class ids for code tuples, for color-constrained enumeration on
/// the quotient.
fn code_classes(xi: &SphereCode) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u64>> = xi.codes.iter().collect();
    sorted.sort();
    sorted.dedup();
    xi.codes
        .iter()
        .map(|c| sorted.binary_search(&c).unwrap() as u32)
        .collect()
}
