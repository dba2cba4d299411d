//! Command-line surface: generate example graphs, run the coloring
//! pipeline, verify the closeness bound by enumeration, export DOT, and
//! run the exact growth checkers.
//!
//! Exit codes: 0 success / check passed, 1 input or usage error,
//! 2 sphere-code capacity failure, 3 no valid radius, 4 a requested check
//! failed, 5 search budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coarsedist::coloring::{coarse_color_pipeline, PipelineOptions};
use coarsedist::generators::{self, PointedGraph};
use coarsedist::graph::Graph;
use coarsedist::growth::{
    hypothesis_lb_check, linear_bound_check, min_product_oracle, prodspheres_check,
    verify_claim_minimum, GrowthFormula, GrowthInput,
};
use coarsedist::symmetry::{self, enumerate_automorphisms_budgeted, motion_report};
use coarsedist::Error as CoreError;
use coarsedist_cli::document::GraphDocument;
use coarsedist_cli::dot;

const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "coarsedist",
    version,
    about = "Coarsely distinguishing 2-colorings of finite graphs"
)]
struct Cli {
    /// Seed for randomized subcommands; recorded in reports.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Step budget for automorphism enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Where the primary output file goes; defaults are derived from the
    /// input names.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an example-family graph as a JSON document.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the net/sphere-code pipeline and write the coloring.
    Color {
        input: PathBuf,
        /// Coloring radius (odd, >= 5); chosen by the inequality search
        /// when omitted.
        #[arg(long = "R")]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
        /// Growth family for `--mode formula` (path, treeD, grid).
        #[arg(long)]
        formula: Option<String>,
        /// Largest radius the search will try.
        #[arg(long, default_value_t = 41)]
        r_cap: usize,
        /// Also enumerate the colored automorphism group and check the
        /// 4R+1 bound.
        #[arg(long)]
        verify: bool,
    },
    /// Enumerate automorphisms and check the geometric-motion bound.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Emit DOT with the black/white/gray fill convention.
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Exact growth checkers.
    Growth {
        #[command(subcommand)]
        check: GrowthCmd,
    },
    /// List the automorphism group.
    Autos {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Print every element in cycle notation.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Ball of the d-regular tree.
    TreeBall {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        depth: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Ladder with an apex whose rail swap moves everything a distance 1.
    MotionExample {
        #[arg(long = "L")]
        l: usize,
    },
    /// Spine with 2^n + 1 pendant paths per level; defeats any 2-coloring.
    Counterexample {
        #[arg(long = "N")]
        n: usize,
    },
    /// Finite Diestel-Leader model DL(p, q) at depth H.
    Dl {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long = "H")]
        h: usize,
    },
    /// Truncated free product; factors like c3,k2,p4 glued at vertex 0.
    FreeProduct {
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
        #[arg(long = "W")]
        rounds: usize,
    },
    /// Replace the edges of a colored graph document by rigid gadgets.
    Gadget {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Inequality must hold at every vertex.
    Strict,
    /// Vertices near the boundary (non-maximal degree) are exempt.
    Interior,
    /// Radius from a closed-form growth family (--formula).
    Formula,
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Brute-force the constrained product minimization and check the
    /// minimizer structure claim.
    Claim {
        #[arg(long)]
        delta: u64,
        #[arg(long = "R")]
        r: usize,
        #[arg(long = "Q")]
        q: u64,
    },
    /// Sphere-product inequality against (Delta-1) [beta(4R+1) + 1]^2.
    Prodspheres {
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "R")]
        r: usize,
    },
    /// Lower bound beta(r) >= 2^(sqrt(r)/4) at the given radii.
    Hypothesis {
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        radii: Vec<u64>,
    },
    /// Linear bound eps * beta(r) > r over a radius range.
    Linear {
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Rational epsilon as num/den, e.g. 1/2.
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 100)]
        to: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Stable mapping of library failures onto exit codes.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::CapacityExceeded { .. } | CoreError::CodeOverflow { .. }) => 2,
        Some(CoreError::NoValidRadius { .. }) => 3,
        Some(CoreError::BudgetExceeded(_)) => 5,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let budget = cli.budget.unwrap_or(symmetry::DEFAULT_SEARCH_BUDGET);
    match cli.command {
        Command::Gen { family } => cmd_gen(family, cli.output),
        Command::Color {
            input,
            radius,
            mode,
            formula,
            r_cap,
            verify,
        } => cmd_color(
            &input, radius, mode, formula, r_cap, verify, budget, cli.seed, cli.output,
        ),
        Command::Verify {
            graph,
            coloring,
            bound,
        } => cmd_verify(&graph, &coloring, bound, budget, cli.seed, cli.output),
        Command::ExportDot { graph, coloring } => cmd_export_dot(&graph, coloring, cli.output),
        Command::Growth { check } => cmd_growth(check, cli.output),
        Command::Autos {
            graph,
            coloring,
            list,
        } => cmd_autos(&graph, coloring, list, budget),
    }
}

fn derived_path(base: &Path, suffix: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    base.with_file_name(format!("{stem}{suffix}"))
}

fn cmd_gen(family: Family, output: Option<PathBuf>) -> Result<u8> {
    let (graph, default_name) = match family {
        Family::TreeBall { d, depth } => (
            generators::regular_tree_ball(d, depth)?,
            format!("tree_ball_{d}_{depth}.json"),
        ),
        Family::Cycle { n } => (generators::cycle(n)?, format!("cycle_{n}.json")),
        Family::Path { n } => (generators::path(n)?, format!("path_{n}.json")),
        Family::MotionExample { l } => (
            generators::motion_example(l)?,
            format!("motion_example_{l}.json"),
        ),
        Family::Counterexample { n } => (
            generators::counterexample_graph(n)?.graph,
            format!("counterexample_{n}.json"),
        ),
        Family::Dl { p, q, h } => (generators::dl_graph(p, q, h)?, format!("dl_{p}_{q}_{h}.json")),
        Family::FreeProduct { factors, rounds } => {
            let parsed: Vec<PointedGraph> = factors
                .iter()
                .map(|s| parse_factor(s))
                .collect::<Result<_>>()?;
            (
                generators::free_product_truncation(&parsed, rounds)?,
                format!("free_product_{}_{rounds}.json", factors.join("_")),
            )
        }
        Family::Gadget { input } => {
            let doc = GraphDocument::load(&input)?;
            let g = doc.to_graph()?;
            let phi = doc.total_coloring()?;
            (
                generators::gadget_substitute(&g, &phi)?,
                format!(
                    "{}_gadget.json",
                    input.file_stem().unwrap_or_default().to_string_lossy()
                ),
            )
        }
    };
    let path = output.unwrap_or_else(|| PathBuf::from(default_name));
    GraphDocument::from_graph(&graph).save(&path)?;
    println!(
        "wrote {} vertices, {} edges to {}",
        graph.n(),
        graph.edge_count(),
        path.display()
    );
    Ok(0)
}

/// Factor spec: `kN` complete, `cN` cycle, `pN` path; basepoint 0.
fn parse_factor(spec: &str) -> Result<PointedGraph> {
    if spec.len() < 2 {
        bail!("bad factor {spec:?} (use kN, cN, or pN)");
    }
    let (kind, num) = spec.split_at(1);
    let n: usize = num
        .parse()
        .with_context(|| format!("bad factor size in {spec:?}"))?;
    let g = match kind {
        "k" => generators::complete(n),
        "c" => generators::cycle(n)?,
        "p" => generators::path(n)?,
        _ => bail!("unknown factor kind {spec:?} (use kN, cN, or pN)"),
    };
    Ok(PointedGraph::new(g, 0)?)
}

#[derive(Serialize)]
struct ColorReport {
    r: usize,
    net_size: usize,
    xi_strategy: String,
    quotient_distinguishing: bool,
    capacity_margin: Option<u64>,
    bound: Option<u64>,
    max_geometric_motion: Option<u64>,
    bound_pass: Option<bool>,
    seed: Option<u64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_color(
    input: &Path,
    radius: Option<usize>,
    mode: Mode,
    formula: Option<String>,
    r_cap: usize,
    verify: bool,
    budget: u64,
    seed: Option<u64>,
    output: Option<PathBuf>,
) -> Result<u8> {
    let doc = GraphDocument::load(input)?;
    let g = doc.to_graph()?;
    let opts = PipelineOptions {
        r_cap,
        verify,
        budget,
    };
    let radius = match (radius, mode) {
        (Some(r), _) => Some(r),
        (None, Mode::Strict) => None, // pipeline runs the strict search
        (None, Mode::Interior) => {
            let delta = g.max_degree();
            let boundary: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < delta).collect();
            let choice = coarsedist::choose_r_interior(&g, &boundary, r_cap)?;
            println!(
                "interior radius search: R = {}, {} vertices checked, {} exempt near the boundary",
                choice.r, choice.checked, choice.exempt
            );
            Some(choice.r)
        }
        (None, Mode::Formula) => {
            let name = formula.ok_or_else(|| anyhow!("--mode formula needs --formula"))?;
            let f = GrowthFormula::parse(&name)
                .ok_or_else(|| anyhow!("unknown growth formula {name:?}"))?;
            Some(coarsedist::choose_r_formula(&f, r_cap)?)
        }
    };
    let out = coarse_color_pipeline(&g, radius, &opts)?;
    let colored_path = output.unwrap_or_else(|| derived_path(input, ".colored.json"));
    GraphDocument::from_graph(&g)
        .with_total_coloring(&out.coloring)
        .save(&colored_path)?;
    println!("{}", out.report);
    println!("wrote coloring to {}", colored_path.display());
    let report_path = derived_path(&colored_path, ".report.json");
    let verification = out.report.verification.as_ref();
    let report = ColorReport {
        r: out.report.r,
        net_size: out.report.net_size,
        xi_strategy: out.report.xi_strategy.to_string(),
        quotient_distinguishing: out.report.quotient_distinguishing,
        capacity_margin: out.report.capacity_margin,
        bound: verification.map(|v| v.bound),
        max_geometric_motion: verification.map(|v| v.max_geometric_motion),
        bound_pass: verification.map(|v| v.passes()),
        seed,
    };
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    println!("wrote report to {}", report_path.display());
    if verification.is_some_and(|v| !v.passes()) {
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport {
    /// `None` when the step budget ran out before the uncolored group was
    /// fully listed; never a truncated count.
    aut_order: Option<usize>,
    aut_coloring_order: usize,
    max_geometric_motion: u64,
    bound: Option<u64>,
    pass: Option<bool>,
    violators: Vec<String>,
    seed: Option<u64>,
}

fn cmd_verify(
    graph: &Path,
    coloring: &Path,
    bound: Option<u64>,
    budget: u64,
    seed: Option<u64>,
    output: Option<PathBuf>,
) -> Result<u8> {
    let g = GraphDocument::load(graph)?.to_graph()?;
    let phi = GraphDocument::load(coloring)?.total_coloring()?;
    // the uncolored group can be astronomically larger than the colored
    // one (pendant-copy permutations); its order is informational only
    let all = match enumerate_automorphisms_budgeted(&g, None, budget) {
        Ok(list) => Some(list.len()),
        Err(CoreError::BudgetExceeded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let preserving = enumerate_automorphisms_budgeted(&g, Some(&phi), budget)?;
    let mut max_gm = 0u64;
    let mut violators = Vec::new();
    for f in &preserving {
        let gm = motion_report(&g, f)?.geometric_motion;
        max_gm = max_gm.max(gm);
        if bound.is_some_and(|b| gm > b) {
            violators.push(f.to_string());
        }
    }
    let pass = bound.map(|b| max_gm <= b);
    match all {
        Some(count) => println!(
            "|Aut| = {count}, |Aut(., phi)| = {}, max gm = {max_gm}",
            preserving.len()
        ),
        None => println!(
            "|Aut| = (budget exceeded, not enumerated), |Aut(., phi)| = {}, max gm = {max_gm}",
            preserving.len()
        ),
    }
    match (bound, pass) {
        (Some(b), Some(true)) => println!("bound {b}: pass"),
        (Some(b), Some(false)) => {
            println!("bound {b}: FAIL ({} violators)", violators.len());
            for v in &violators {
                println!("  violator: {v}");
            }
        }
        _ => {}
    }
    let report = VerifyReport {
        aut_order: all,
        aut_coloring_order: preserving.len(),
        max_geometric_motion: max_gm,
        bound,
        pass,
        violators,
        seed,
    };
    let report_path = output.unwrap_or_else(|| derived_path(coloring, ".verify.json"));
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    println!("wrote report to {}", report_path.display());
    if pass == Some(false) {
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(0)
}

fn cmd_export_dot(graph: &Path, coloring: Option<PathBuf>, output: Option<PathBuf>) -> Result<u8> {
    let doc = GraphDocument::load(graph)?;
    let g = doc.to_graph()?;
    let coloring_values = match coloring {
        Some(path) => {
            let cdoc = GraphDocument::load(&path)?;
            let values = cdoc
                .coloring
                .ok_or_else(|| anyhow!("{} carries no coloring", path.display()))?;
            if values.len() != g.n() {
                bail!("coloring length {} != {} vertices", values.len(), g.n());
            }
            Some(values)
        }
        None => doc.coloring.clone(),
    };
    let text = dot::render(&g, coloring_values.as_deref());
    match output {
        Some(path) => {
            std::fs::write(&path, text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn growth_input<'a>(
    formula: &'a Option<GrowthFormula>,
    graph: &'a Option<Graph>,
) -> Result<GrowthInput<'a>> {
    match (formula, graph) {
        (Some(f), None) => Ok(GrowthInput::Formula(f)),
        (None, Some(g)) => Ok(GrowthInput::Graph(g)),
        _ => bail!("give exactly one of --formula or --input"),
    }
}

fn load_growth_source(
    formula: Option<String>,
    input: Option<PathBuf>,
) -> Result<(Option<GrowthFormula>, Option<Graph>)> {
    let formula = match formula {
        Some(name) => Some(
            GrowthFormula::parse(&name)
                .ok_or_else(|| anyhow!("unknown growth formula {name:?}"))?,
        ),
        None => None,
    };
    let graph = match input {
        Some(path) => Some(GraphDocument::load(&path)?.to_graph()?),
        None => None,
    };
    Ok((formula, graph))
}

fn cmd_growth(check: GrowthCmd, output: Option<PathBuf>) -> Result<u8> {
    #[derive(Serialize)]
    #[serde(tag = "check")]
    enum GrowthReport {
        Claim {
            delta: u64,
            r: usize,
            q: u64,
            min: String,
            holds: bool,
            witness: Option<Vec<u64>>,
            plateau: Option<usize>,
            minimizer_count: usize,
            satisfying_count: usize,
        },
        Prodspheres {
            r: usize,
            holds_statement: bool,
            holds_proof: bool,
        },
        Hypothesis {
            radii: Vec<u64>,
            passes: Vec<bool>,
        },
        Linear {
            eps: String,
            from: u64,
            to: u64,
            holds_from: Option<u64>,
        },
    }

    let (report, passed) = match check {
        GrowthCmd::Claim { delta, r, q } => {
            let oracle = min_product_oracle(delta, r, q)?;
            let rep = verify_claim_minimum(delta, r, q)?;
            println!(
                "min = {} over {} minimizers; structured witness: {}",
                oracle.min_value,
                oracle.minimizers.len(),
                match &rep.witness {
                    Some(w) => format!("{:?} with plateau I = {}", w.tuple, w.plateau),
                    None => "none".into(),
                }
            );
            let holds = rep.holds;
            (
                GrowthReport::Claim {
                    delta,
                    r,
                    q,
                    min: oracle.min_value.to_string(),
                    holds,
                    witness: rep.witness.as_ref().map(|w| w.tuple.clone()),
                    plateau: rep.witness.as_ref().map(|w| w.plateau),
                    minimizer_count: rep.minimizer_count,
                    satisfying_count: rep.satisfying_count,
                },
                holds,
            )
        }
        GrowthCmd::Prodspheres { formula, input, r } => {
            let (f, g) = load_growth_source(formula, input)?;
            let rep = prodspheres_check(growth_input(&f, &g)?, r)?;
            println!(
                "product inequality at R = {r}: statement form {}, proof form {}",
                if rep.holds_statement { "holds" } else { "fails" },
                if rep.holds_proof { "holds" } else { "fails" },
            );
            let passed = rep.holds_statement;
            (
                GrowthReport::Prodspheres {
                    r,
                    holds_statement: rep.holds_statement,
                    holds_proof: rep.holds_proof,
                },
                passed,
            )
        }
        GrowthCmd::Hypothesis {
            formula,
            input,
            radii,
        } => {
            let (f, g) = load_growth_source(formula, input)?;
            let rep = hypothesis_lb_check(growth_input(&f, &g)?, &radii)?;
            for (r, ok) in rep.radii.iter().zip(&rep.passes) {
                println!("radius {r}: {}", if *ok { "pass" } else { "fail" });
            }
            let passed = rep.all_pass();
            (
                GrowthReport::Hypothesis {
                    radii: rep.radii,
                    passes: rep.passes,
                },
                passed,
            )
        }
        GrowthCmd::Linear {
            formula,
            input,
            eps,
            from,
            to,
        } => {
            let (num, den) = eps
                .split_once('/')
                .ok_or_else(|| anyhow!("--eps must be num/den, e.g. 1/2"))?;
            let (num, den): (u64, u64) = (num.parse()?, den.parse()?);
            let (f, g) = load_growth_source(formula, input)?;
            let rep = linear_bound_check(growth_input(&f, &g)?, num, den, from, to)?;
            match rep.holds_from {
                Some(r0) => println!("holds from r = {r0} through r = {to}"),
                None => println!("does not hold in range [{from}, {to}]"),
            }
            let passed = rep.holds_from.is_some();
            (
                GrowthReport::Linear {
                    eps,
                    from,
                    to,
                    holds_from: rep.holds_from,
                },
                passed,
            )
        }
    };
    let path = output.unwrap_or_else(|| PathBuf::from("growth.report.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
    println!("wrote report to {}", path.display());
    Ok(if passed { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_autos(graph: &Path, coloring: Option<PathBuf>, list: bool, budget: u64) -> Result<u8> {
    let g = GraphDocument::load(graph)?.to_graph()?;
    let phi = match coloring {
        Some(path) => Some(GraphDocument::load(&path)?.total_coloring()?),
        None => None,
    };
    let autos = enumerate_automorphisms_budgeted(&g, phi.as_ref(), budget)?;
    match phi {
        Some(_) => println!("|Aut(g, phi)| = {}", autos.len()),
        None => println!("|Aut(g)| = {}", autos.len()),
    }
    if list {
        for f in &autos {
            println!("{f}");
        }
    }
    Ok(0)
}
