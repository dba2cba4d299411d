//! Exact growth machinery: closed-form growth functions for the standard
//! infinite families, the brute-force oracle for the constrained integer
//! minimization behind the sphere-product bound, and finite-range checkers
//! for the product inequality, the square-root lower-bound hypothesis, and
//! the linear bound. All comparisons are exact integer or rational
//! arithmetic; no floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closed-form growth of an infinite family, used where a finite truncation
/// would understate sigma and beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthFormula {
    /// The two-sided infinite path.
    Line,
    /// The d-regular infinite tree, `d >= 3`.
    RegularTree(usize),
    /// The square lattice.
    SquareGrid,
}

impl GrowthFormula {
    pub fn parse(name: &str) -> Option<GrowthFormula> {
        match name {
            "path" | "line" => Some(GrowthFormula::Line),
            "grid" => Some(GrowthFormula::SquareGrid),
            _ => name
                .strip_prefix("tree")
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&d| d >= 3)
                .map(GrowthFormula::RegularTree),
        }
    }

    pub fn delta(&self) -> usize {
        match self {
            GrowthFormula::Line => 2,
            GrowthFormula::RegularTree(d) => *d,
            GrowthFormula::SquareGrid => 4,
        }
    }

    /// `|S(x, r)|`.
    pub fn sigma(&self, r: u64) -> BigUint {
        if r == 0 {
            return BigUint::one();
        }
        match self {
            GrowthFormula::Line => BigUint::from(2u32),
            GrowthFormula::RegularTree(d) => {
                BigUint::from(*d) * BigUint::from(*d - 1).pow((r - 1) as u32)
            }
            GrowthFormula::SquareGrid => BigUint::from(4 * r),
        }
    }

    /// `|D(x, r)|`.
    pub fn beta(&self, r: u64) -> BigUint {
        match self {
            GrowthFormula::Line => BigUint::from(2 * r + 1),
            GrowthFormula::RegularTree(d) => {
                // 1 + d((d-1)^r - 1)/(d-2), an exact geometric sum
                let dm1 = BigUint::from(*d - 1);
                let num = BigUint::from(*d) * (dm1.pow(r as u32) - BigUint::one());
                BigUint::one() + num / BigUint::from(*d - 2)
            }
            GrowthFormula::SquareGrid => BigUint::from(2 * r * r + 2 * r + 1),
        }
    }
}

impl std::fmt::Display for GrowthFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrowthFormula::Line => write!(f, "path"),
            GrowthFormula::RegularTree(d) => write!(f, "tree{d}"),
            GrowthFormula::SquareGrid => write!(f, "grid"),
        }
    }
}

/// Sigma/beta source for the finite-range checkers: a closed-form family
/// (one representative point) or every vertex of a concrete graph.
#[derive(Debug, Clone, Copy)]
pub enum GrowthInput<'a> {
    Formula(&'a GrowthFormula),
    Graph(&'a Graph),
}

impl GrowthInput<'_> {
    fn delta(&self) -> usize {
        match self {
            GrowthInput::Formula(f) => f.delta(),
            GrowthInput::Graph(g) => g.max_degree(),
        }
    }

    fn points(&self) -> usize {
        match self {
            GrowthInput::Formula(_) => 1,
            GrowthInput::Graph(g) => g.n(),
        }
    }

    /// sigma and beta for one point, up to `r_max` inclusive.
    fn profile(&self, x: usize, r_max: u64) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
        match self {
            GrowthInput::Formula(f) => {
                let sigma: Vec<BigUint> = (0..=r_max).map(|r| f.sigma(r)).collect();
                let beta: Vec<BigUint> = (0..=r_max).map(|r| f.beta(r)).collect();
                Ok((sigma, beta))
            }
            GrowthInput::Graph(g) => {
                let p = g.growth_profile(x, r_max as usize)?;
                Ok((
                    p.sigma.iter().map(|&s| BigUint::from(s)).collect(),
                    p.beta.iter().map(|&b| BigUint::from(b)).collect(),
                ))
            }
        }
    }
}

/// A point of the feasible region of the minimization: positive integers
/// `a_1..a_R` with `a_1 <= Delta`, `a_i <= a_{i-1}(Delta-1)`, and total
/// `Q - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleTuple {
    pub a: Vec<u64>,
    pub delta: u64,
    pub r: usize,
    pub q: u64,
}

impl FeasibleTuple {
    /// `prod_{i=3}^{R} (a_i + 1)`.
    pub fn objective(&self) -> u128 {
        objective(&self.a)
    }

    pub fn is_feasible(&self) -> bool {
        check_parameters(self.delta, self.r, self.q).is_ok()
            && self.a.len() == self.r
            && self.a.iter().all(|&x| x >= 1)
            && self.a[0] <= self.delta
            && self
                .a
                .windows(2)
                .all(|w| w[1] <= w[0].saturating_mul(self.delta - 1))
            && self.a.iter().sum::<u64>() == self.q - 1
    }
}

fn objective(a: &[u64]) -> u128 {
    a.iter().skip(2).map(|&x| x as u128 + 1).product()
}

/// Check the parameter sanity conditions `Delta > 2`, `R > 3`,
/// `Q > Delta^2 + R - 1`.
fn check_parameters(delta: u64, r: usize, q: u64) -> Result<()> {
    if delta <= 2 || r <= 3 || q <= delta * delta + r as u64 - 1 {
        return Err(Error::Parameter(format!(
            "need Delta > 2, R > 3, Q > Delta^2 + R - 1; got Delta = {delta}, R = {r}, Q = {q}"
        )));
    }
    Ok(())
}

/// A minimizer witnessing the structure claim, along with the plateau
/// length `I`: `a_1 = Delta`, `a_2 = Delta(Delta-1)`, the run
/// `a_2..a_{2+I}` is non-decreasing with everything after it below
/// `Delta(Delta-1)`, and `a_i + 1 > (a_{i-1} - 1)(Delta - 1)` along the
/// run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimWitness {
    pub tuple: Vec<u64>,
    pub plateau: usize,
}

/// Smallest `I` for which the tuple satisfies the claim's properties, if
/// any.
fn claim_plateau(a: &[u64], delta: u64) -> Option<usize> {
    let r = a.len();
    if a[0] != delta || a[1] != delta * (delta - 1) {
        return None;
    }
    let cap = delta * (delta - 1);
    'outer: for plateau in 0..=r.saturating_sub(2) {
        // 1-based a_2..a_{2+I} is 0-based a[1..=1+I]
        for i in 1..=plateau {
            if a[i + 1] < a[i] {
                continue 'outer;
            }
        }
        for &x in &a[plateau + 2..] {
            if x >= cap {
                continue 'outer;
            }
        }
        // 1-based 3 <= i <= 2+I is 0-based 2..=1+plateau (empty when I = 0)
        for i in 2..=(1 + plateau) {
            if a[i] + 1 <= (a[i - 1] - 1) * (delta - 1) {
                continue 'outer;
            }
        }
        return Some(plateau);
    }
    None
}

/// Exact result of the brute-force minimization.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub min_value: u128,
    /// Every minimizer, in lexicographic order.
    pub minimizers: Vec<Vec<u64>>,
    /// A minimizer satisfying the structure claim, if one exists.
    pub witness: Option<ClaimWitness>,
    /// How many minimizers satisfy the claim (recorded, not asserted to be
    /// all of them).
    pub satisfying_count: usize,
}

/// Enumerate the entire feasible region and report the exact minimum of
/// `prod_{i=3}^R (a_i + 1)`, all minimizers, and a structure witness.
pub fn min_product_oracle(delta: u64, r: usize, q: u64) -> Result<OracleResult> {
    check_parameters(delta, r, q)?;
    // largest sum a (suffix) of `count` entries can reach starting below `prev`
    let max_suffix = |prev: u64, count: usize| -> u64 {
        let mut total = 0u64;
        let mut cur = prev;
        for _ in 0..count {
            cur = cur.saturating_mul(delta - 1);
            total = total.saturating_add(cur);
        }
        total
    };
    let mut min_value = u128::MAX;
    let mut minimizers: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<u64> = Vec::with_capacity(r);

    fn descend(
        stack: &mut Vec<u64>,
        rem: u64,
        delta: u64,
        r: usize,
        max_suffix: &dyn Fn(u64, usize) -> u64,
        min_value: &mut u128,
        minimizers: &mut Vec<Vec<u64>>,
    ) {
        let i = stack.len();
        let prev_cap = if i == 0 {
            delta
        } else {
            stack[i - 1].saturating_mul(delta - 1)
        };
        if i == r - 1 {
            if rem >= 1 && rem <= prev_cap {
                stack.push(rem);
                let val = objective(stack);
                match val.cmp(min_value) {
                    std::cmp::Ordering::Less => {
                        *min_value = val;
                        minimizers.clear();
                        minimizers.push(stack.clone());
                    }
                    std::cmp::Ordering::Equal => minimizers.push(stack.clone()),
                    std::cmp::Ordering::Greater => {}
                }
                stack.pop();
            }
            return;
        }
        let slots_after = r - i - 1;
        let hi = prev_cap.min(rem.saturating_sub(slots_after as u64));
        for v in 1..=hi {
            if max_suffix(v, slots_after) < rem - v {
                continue; // tail cannot absorb the remaining sum yet
            }
            stack.push(v);
            descend(stack, rem - v, delta, r, max_suffix, min_value, minimizers);
            stack.pop();
        }
    }

    descend(
        &mut stack,
        q - 1,
        delta,
        r,
        &max_suffix,
        &mut min_value,
        &mut minimizers,
    );
    if minimizers.is_empty() {
        return Err(Error::Invariant(
            "feasible region is empty despite parameter sanity".into(),
        ));
    }
    let mut witness = None;
    let mut satisfying = 0;
    for m in &minimizers {
        if let Some(plateau) = claim_plateau(m, delta) {
            satisfying += 1;
            if witness.is_none() {
                witness = Some(ClaimWitness {
                    tuple: m.clone(),
                    plateau,
                });
            }
        }
    }
    Ok(OracleResult {
        min_value,
        minimizers,
        witness,
        satisfying_count: satisfying,
    })
}

/// Report of checking the structure claim against the exact minimizers.
#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub holds: bool,
    pub min_value: u128,
    pub minimizer_count: usize,
    pub satisfying_count: usize,
    pub witness: Option<ClaimWitness>,
}

/// True when at least one exact minimizer has the claimed structure.
pub fn verify_claim_minimum(delta: u64, r: usize, q: u64) -> Result<ClaimReport> {
    let oracle = min_product_oracle(delta, r, q)?;
    Ok(ClaimReport {
        holds: oracle.witness.is_some(),
        min_value: oracle.min_value,
        minimizer_count: oracle.minimizers.len(),
        satisfying_count: oracle.satisfying_count,
        witness: oracle.witness,
    })
}

/// Exact evaluation of the sphere-product inequality in both of its
/// written forms.
#[derive(Debug, Clone)]
pub struct ProdSpheresReport {
    pub r: usize,
    pub delta: usize,
    /// `prod > (Delta-1) [beta(4R+1) + 1]^2` for every point.
    pub holds_statement: bool,
    /// `prod > (Delta-1) [beta(4R+1)]^2` for every point.
    pub holds_proof: bool,
    pub first_failure_statement: Option<usize>,
    pub first_failure_proof: Option<usize>,
}

pub fn prodspheres_check(input: GrowthInput<'_>, r: usize) -> Result<ProdSpheresReport> {
    if r < 3 {
        return Err(Error::Parameter("prodspheres needs R >= 3".into()));
    }
    let delta = input.delta();
    let dm1 = BigUint::from(delta.saturating_sub(1));
    let reach = 4 * r as u64 + 1;
    let mut holds_statement = true;
    let mut holds_proof = true;
    let mut first_failure_statement = None;
    let mut first_failure_proof = None;
    for x in 0..input.points() {
        let (sigma, beta) = input.profile(x, reach)?;
        let mut prod = BigUint::one();
        for s in &sigma[3..=r] {
            prod *= s + 1u32;
        }
        let b = &beta[reach as usize];
        let statement_rhs = &dm1 * (b + 1u32) * (b + 1u32);
        let proof_rhs = &dm1 * b * b;
        if prod <= statement_rhs && first_failure_statement.is_none() {
            holds_statement = false;
            first_failure_statement = Some(x);
        }
        if prod <= proof_rhs && first_failure_proof.is_none() {
            holds_proof = false;
            first_failure_proof = Some(x);
        }
    }
    Ok(ProdSpheresReport {
        r,
        delta,
        holds_statement,
        holds_proof,
        first_failure_statement,
        first_failure_proof,
    })
}

/// Exact test of `beta >= 2^{sqrt(r)/4}`, i.e. `beta^4 >= 2^{sqrt(r)}`.
/// For non-square `r` the two sides can never be equal, so interval
/// refinement of `log2(beta^4)` against `sqrt(r)` terminates.
fn meets_sqrt_bound(beta: &BigUint, r: u64) -> bool {
    if beta.is_zero() {
        return false;
    }
    if r == 0 {
        return true; // beta >= 1 = 2^0
    }
    let u = beta.pow(4);
    let s = r.isqrt();
    if s * s == r {
        return u >= (BigUint::one() << s);
    }
    let k = u.bits() - 1; // floor(log2 u)
    if u == (BigUint::one() << k) {
        // log2(u) = k exactly; k >= sqrt(r) <=> k^2 >= r
        return (k as u128) * (k as u128) >= r as u128;
    }
    let mut q: u64 = 16;
    loop {
        let p = u.pow(q as u32).bits() - 1; // floor(q log2 u)
        let q2r = (q as u128) * (q as u128) * (r as u128);
        if (p as u128) * (p as u128) >= q2r {
            return true;
        }
        if (p as u128 + 1) * (p as u128 + 1) <= q2r {
            return false;
        }
        q *= 2;
        if q > 4096 {
            // log2(u)^2 is irrational, so the intervals must separate; this
            // precision is far beyond anything the checkers feed in
            return (p as u128) * (p as u128) >= q2r;
        }
    }
}

/// Per-radius outcome of the square-root lower-bound hypothesis.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub radii: Vec<u64>,
    /// Pass/fail per radius, quantified over all points.
    pub passes: Vec<bool>,
    /// First failing (radius, point), if any.
    pub first_failure: Option<(u64, usize)>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.passes.iter().all(|&p| p)
    }
}

pub fn hypothesis_lb_check(input: GrowthInput<'_>, radii: &[u64]) -> Result<HypothesisReport> {
    let mut passes = Vec::with_capacity(radii.len());
    let mut first_failure = None;
    for &r in radii {
        let mut ok = true;
        for x in 0..input.points() {
            let (_, beta) = input.profile(x, r)?;
            if !meets_sqrt_bound(&beta[r as usize], r) {
                ok = false;
                if first_failure.is_none() {
                    first_failure = Some((r, x));
                }
                break;
            }
        }
        passes.push(ok);
    }
    Ok(HypothesisReport {
        radii: radii.to_vec(),
        passes,
        first_failure,
    })
}

/// Finite-range verification of `eps * beta(r) > r` with exact rationals.
#[derive(Debug, Clone)]
pub struct LinearBoundReport {
    pub eps_num: u64,
    pub eps_den: u64,
    pub lo: u64,
    pub hi: u64,
    /// Least radius in the range from which the bound holds (for all
    /// points) through the top of the range; `None` when even the top
    /// fails.
    pub holds_from: Option<u64>,
}

pub fn linear_bound_check(
    input: GrowthInput<'_>,
    eps_num: u64,
    eps_den: u64,
    lo: u64,
    hi: u64,
) -> Result<LinearBoundReport> {
    if eps_num == 0 || eps_den == 0 || lo > hi {
        return Err(Error::Parameter(
            "linear bound needs eps > 0 and a nonempty range".into(),
        ));
    }
    let mut holds_from = None;
    for r in (lo..=hi).rev() {
        let mut ok = true;
        for x in 0..input.points() {
            let (_, beta) = input.profile(x, r)?;
            // eps_num * beta > eps_den * r
            if BigUint::from(eps_num) * &beta[r as usize] <= BigUint::from(eps_den) * r {
                ok = false;
                break;
            }
        }
        if ok {
            holds_from = Some(r);
        } else {
            break;
        }
    }
    Ok(LinearBoundReport {
        eps_num,
        eps_den,
        lo,
        hi,
        holds_from,
    })
}
