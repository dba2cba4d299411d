//! End-to-end tests of the binary: documented exit codes, file outputs,
//! and the wire formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coarsedist_cli::document::GraphDocument;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coarsedist"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn gen_writes_documents_with_counts() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["gen", "dl", "--p", "2", "--q", "3", "--H", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("wrote 5 vertices, 6 edges"));
    let doc = GraphDocument::load(&dir.path().join("dl_2_3_1.json")).unwrap();
    assert_eq!((doc.n, doc.edges.len()), (5, 6));

    let out = run_in(dir.path(), &["gen", "cycle", "--n", "200"]);
    assert_eq!(code(&out), 0);
    let doc = GraphDocument::load(&dir.path().join("cycle_200.json")).unwrap();
    assert_eq!((doc.n, doc.edges.len()), (200, 200));

    let out = run_in(dir.path(), &["gen", "counterexample", "--N", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("wrote 15 vertices"));

    let out = run_in(
        dir.path(),
        &["gen", "free-product", "--factors", "c3,k2", "--W", "1"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("wrote 6 vertices"));

    let out = run_in(dir.path(), &["gen", "cycle", "--n", "2"]);
    assert_eq!(code(&out), 1, "undersized cycle is an input error");
}

#[test]
fn documents_roundtrip_losslessly() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "motion-example", "--L", "4"]);
    let path = dir.path().join("motion_example_4.json");
    let doc = GraphDocument::load(&path).unwrap();
    let text = serde_json::to_string_pretty(&doc).unwrap();
    let reparsed: GraphDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, reparsed);
    assert!(doc.labels.is_some(), "ladder keeps its vertex names");
}

#[test]
fn color_pipeline_on_cycle_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "cycle", "--n", "200"]);
    let out = run_in(dir.path(), &["color", "cycle_200.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R = 9"));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("cycle_200.colored.report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["r"], 9);
    assert_eq!(report["net_size"], 10);
    let colored = GraphDocument::load(&dir.path().join("cycle_200.colored.json")).unwrap();
    assert!(colored.total_coloring().is_ok());

    // the pipeline coloring passes the 4R+1 closeness bound by enumeration
    let out = run_in(
        dir.path(),
        &[
            "verify",
            "cycle_200.json",
            "cycle_200.colored.json",
            "--bound",
            "37",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("bound 37: pass"));

    // a total coloring renders without gray nodes
    let out = run_in(dir.path(), &["export-dot", "cycle_200.colored.json"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("gray"));

    // capacity failure: many leaf net members share one parent's code pool
    run_in(dir.path(), &["gen", "tree-ball", "--d", "3", "--depth", "11"]);
    let out = run_in(dir.path(), &["color", "tree_ball_3_11.json", "--R", "5"]);
    assert_eq!(code(&out), 2);

    // no valid radius on a short path
    run_in(dir.path(), &["gen", "path", "--n", "3"]);
    let out = run_in(dir.path(), &["color", "path_3.json", "--r-cap", "9"]);
    assert_eq!(code(&out), 3);

    // degenerate single vertex
    run_in(dir.path(), &["gen", "path", "--n", "1"]);
    let out = run_in(dir.path(), &["color", "path_1.json"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn color_formula_mode() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "cycle", "--n", "150"]);
    let out = run_in(
        dir.path(),
        &[
            "color",
            "cycle_150.json",
            "--mode",
            "formula",
            "--formula",
            "path",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R = 9"));
}

#[test]
fn color_interior_mode() {
    let dir = TempDir::new().unwrap();
    // every vertex of the small ball sits near the leaf boundary: the
    // check is vacuous, R = 5 is chosen, and the singleton net succeeds
    run_in(dir.path(), &["gen", "tree-ball", "--d", "3", "--depth", "4"]);
    let out = run_in(
        dir.path(),
        &["color", "tree_ball_3_4.json", "--mode", "interior"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("R = 5"));
    assert!(stdout(&out).contains("net size = 1"));
    assert!(stdout(&out).contains("46 exempt"));
}

#[test]
fn verify_reports_group_sizes_and_bound() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "path", "--n", "3"]);
    let phi = GraphDocument {
        version: 1,
        n: 3,
        edges: vec![(0, 1), (1, 2)],
        labels: None,
        coloring: Some(vec![Some(0), Some(0), Some(1)]),
    };
    phi.save(&dir.path().join("p3_phi.json")).unwrap();
    let out = run_in(
        dir.path(),
        &["verify", "path_3.json", "p3_phi.json", "--bound", "0"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("|Aut| = 2"));
    assert!(text.contains("|Aut(., phi)| = 1"));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("p3_phi.verify.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["aut_coloring_order"], 1);
    assert_eq!(report["pass"], true);
}

#[test]
fn verify_flags_the_counterexample_adversary() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "counterexample", "--N", "3"]);
    let doc = GraphDocument::load(&dir.path().join("counterexample_3.json")).unwrap();
    // a coloring with small color-preserving group but duplicated copies at
    // every level: copy i at level n gets the bits of min(i, 2^n - 1)
    let mut colors = vec![Some(0u8); doc.n];
    let mut idx = 3; // vertices after the three spine vertices
    for n in 1..=3usize {
        let copies = (1 << n) + 1;
        for i in 0..copies {
            let sig = i.min((1 << n) - 1);
            for m in 0..n {
                colors[idx] = Some(((sig >> m) & 1) as u8);
                idx += 1;
            }
        }
    }
    assert_eq!(idx, doc.n);
    let phi = GraphDocument {
        coloring: Some(colors),
        ..doc
    };
    phi.save(&dir.path().join("cex_phi.json")).unwrap();
    let out = run_in(
        dir.path(),
        &[
            "verify",
            "counterexample_3.json",
            "cex_phi.json",
            "--bound",
            "5",
        ],
    );
    assert_eq!(code(&out), 4, "adversary swap moves tips a distance 6");
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("violator"));
}

#[test]
fn export_dot_follows_the_fill_convention() {
    let dir = TempDir::new().unwrap();
    // the worked path example: psi is gray exactly on the odd free spheres
    let psi = GraphDocument {
        version: 1,
        n: 11,
        edges: (0..10).map(|i| (i, i + 1)).collect(),
        labels: None,
        coloring: Some(vec![
            Some(0),
            Some(0),
            Some(1),
            None,
            Some(1),
            None,
            Some(1),
            Some(1),
            Some(1),
            Some(1),
            Some(1),
        ]),
    };
    psi.save(&dir.path().join("p11_psi.json")).unwrap();
    let out = run_in(dir.path(), &["export-dot", "p11_psi.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for gray in [3, 5] {
        assert!(text.contains(&format!("{gray} [label=\"{gray}\", style=filled, fillcolor=gray]")));
    }
    assert!(text.contains("0 [label=\"0\", style=filled, fillcolor=black"));
    assert_eq!(text.matches("fillcolor=gray").count(), 2);

    // no coloring at all: plain nodes
    run_in(dir.path(), &["gen", "path", "--n", "4"]);
    let out = run_in(dir.path(), &["export-dot", "path_4.json"]);
    assert!(!stdout(&out).contains("fillcolor"));
}

#[test]
fn growth_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = run_in(
        dir.path(),
        &["growth", "claim", "--delta", "3", "--R", "5", "--Q", "15"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("min = 16"));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("growth.report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["min"], "16");
    assert_eq!(report["witness"], serde_json::json!([3, 6, 3, 1, 1]));

    let out = run_in(
        dir.path(),
        &["growth", "claim", "--delta", "3", "--R", "5", "--Q", "13"],
    );
    assert_eq!(code(&out), 1, "parameter sanity violation");

    let out = run_in(
        dir.path(),
        &["growth", "prodspheres", "--formula", "tree3", "--R", "17"],
    );
    assert_eq!(code(&out), 0);
    let out = run_in(
        dir.path(),
        &["growth", "prodspheres", "--formula", "tree3", "--R", "15"],
    );
    assert_eq!(code(&out), 4);

    let out = run_in(
        dir.path(),
        &[
            "growth",
            "hypothesis",
            "--formula",
            "tree3",
            "--radii",
            "4,16,64",
        ],
    );
    assert_eq!(code(&out), 0);

    let out = run_in(
        dir.path(),
        &[
            "growth", "linear", "--formula", "path", "--eps", "1/2", "--from", "1", "--to", "100",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holds from r = 1"));
}

#[test]
fn gadget_generation_from_colored_document() {
    let dir = TempDir::new().unwrap();
    let doc = GraphDocument {
        version: 1,
        n: 3,
        edges: vec![(0, 1), (1, 2)],
        labels: None,
        coloring: Some(vec![Some(0), Some(1), Some(0)]),
    };
    doc.save(&dir.path().join("p3c.json")).unwrap();
    let out = run_in(dir.path(), &["gen", "gadget", "--input", "p3c.json"]);
    assert_eq!(code(&out), 0);
    // two 01-gadgets: 3 originals + 2 * (2 spine + 5 tag)
    assert!(stdout(&out).contains("wrote 17 vertices"));
    let out = run_in(
        dir.path(),
        &["autos", PathBuf::from("p3c_gadget.json").to_str().unwrap()],
    );
    assert!(stdout(&out).contains("|Aut(g)| = 2"));
}

#[test]
fn autos_lists_cycle_notation() {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), &["gen", "cycle", "--n", "6"]);
    let out = run_in(dir.path(), &["autos", "cycle_6.json", "--list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("|Aut(g)| = 12"));
    assert!(text.contains("id"));

    let out = run_in(dir.path(), &["autos", "cycle_6.json", "--budget", "3"]);
    assert_eq!(code(&out), 5, "budget exhaustion has its own exit code");
}
