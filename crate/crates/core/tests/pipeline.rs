//! End-to-end checks of the coloring pipeline against the symmetry engine:
//! net stability of color-preserving automorphisms, projection to the
//! quotient and its homomorphism law, and the geometric-motion bound.

mod common;

use coarsedist::coloring::{
    ab_sets, build_psi, coarse_color_pipeline, realize_phi, PipelineOptions, SphereCode,
    XiStrategy,
};
use coarsedist::generators;
use coarsedist::net::{build_net, build_quotient, spanning_tree};
use coarsedist::symmetry::{enumerate_automorphisms, project_automorphism, Automorphism};

#[test]
fn pipeline_coloring_pins_every_automorphism_on_cycles() {
    for n in [150usize, 200] {
        let g = generators::cycle(n).unwrap();
        let out = coarse_color_pipeline(&g, Some(9), &PipelineOptions::default()).unwrap();
        let net = &out.net;
        let q = build_quotient(&g, net).unwrap();
        let sel = ab_sets(9).unwrap();
        let autos = enumerate_automorphisms(&g, Some(&out.coloring)).unwrap();
        for f in &autos {
            // the projection is defined (a member sits within distance 1 of
            // every image) and preserves the induced code
            let bar = project_automorphism(&g, net, &q, &out.coloring, f, Some(&sel)).unwrap();
            // the quotient code is distinguishing here, so nothing moves
            assert!(bar.is_identity());
            // members map onto members: the motion of the cycle is far
            // above the two-point swap that a net defect would create
            for &y in &net.members {
                assert!(net.member_index(f.image(y)).is_some());
            }
        }
    }
}

#[test]
fn projection_is_a_group_homomorphism() {
    // extend psi by all-zero codes: the coloring only records distance to
    // the net, which keeps the gap-reversing reflection alive
    let g = generators::cycle(200).unwrap();
    let net = build_net(&g, 9, 0).unwrap();
    let sel = ab_sets(9).unwrap();
    let psi = build_psi(&g, &net, &sel).unwrap();
    let zero = SphereCode {
        radii: sel.b.clone(),
        codes: vec![vec![0; sel.b.len()]; net.len()],
    };
    let phi = realize_phi(&g, &net, &psi, &zero).unwrap();
    let autos = enumerate_automorphisms(&g, Some(&phi)).unwrap();
    assert_eq!(autos.len(), 2, "identity and the gap reflection");
    let q = build_quotient(&g, &net).unwrap();
    let project = |f: &Automorphism| -> Automorphism {
        project_automorphism(&g, &net, &q, &phi, f, Some(&sel)).unwrap()
    };
    for a in &autos {
        for b in &autos {
            let lhs = project(&a.compose(b));
            let rhs = project(a).compose(&project(b));
            assert_eq!(lhs, rhs);
        }
    }
    let refl = autos.iter().find(|f| !f.is_identity()).unwrap();
    let bar = project(refl);
    assert!(!bar.is_identity());
    assert!(bar.is_automorphism_of(&q.graph));
    // the cycle moves at least 198 vertices under any non-identity
    // automorphism, far above a two-point swap, so the net is stable
    for &y in &net.members {
        assert!(net.member_index(refl.image(y)).is_some());
    }
}

#[test]
fn bound_holds_on_every_pipeline_success() {
    let mut exercised = 0;
    let instances: Vec<coarsedist::Graph> = vec![
        generators::motion_example(60).unwrap(),
        generators::path(150).unwrap(),
        generators::cycle(300).unwrap(),
        // dense enough that leaf bundles cannot blow up the colored group
        generators::random_connected(80, 60, 123),
    ];
    for g in &instances {
        if let Ok(out) = coarse_color_pipeline(g, Some(5), &PipelineOptions::default()) {
            // leaf bundles of one color can make the colored group too
            // large to list; a budget refusal is not a bound violation
            match coarsedist::check_coarse_bound(g, Some(&out.coloring), 21) {
                Ok(rep) => {
                    assert!(
                        rep.passes(),
                        "max gm {} above 4R+1 = 21",
                        rep.max_geometric_motion
                    );
                    exercised += 1;
                }
                Err(coarsedist::Error::BudgetExceeded(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(exercised >= 1, "at least one instance must be checkable");
}

#[test]
fn pipeline_is_deterministic() {
    for g in [
        generators::cycle(250).unwrap(),
        generators::random_connected(180, 40, 31),
    ] {
        let a = coarse_color_pipeline(&g, Some(5), &PipelineOptions::default());
        let b = coarse_color_pipeline(&g, Some(5), &PipelineOptions::default());
        match (a, b) {
            (Ok(x), Ok(y)) => {
                assert_eq!(x.coloring, y.coloring);
                assert_eq!(x.net, y.net);
            }
            (Err(x), Err(y)) => assert_eq!(x, y),
            other => panic!("nondeterministic outcome: {other:?}"),
        }
    }
}

#[test]
fn pipeline_verification_report() {
    let g = generators::cycle(150).unwrap();
    let opts = PipelineOptions {
        verify: true,
        ..PipelineOptions::default()
    };
    let out = coarse_color_pipeline(&g, Some(9), &opts).unwrap();
    let v = out.report.verification.expect("verification requested");
    assert_eq!(v.bound, 37);
    assert!(v.passes());
    assert_eq!(out.report.xi_strategy, XiStrategy::SiblingDistinct);
    assert!(out.report.quotient_distinguishing);
}

#[test]
fn spanning_tree_depths_equal_quotient_distances() {
    let g = generators::random_connected(260, 50, 77);
    let net = build_net(&g, 2, 0).unwrap();
    let q = build_quotient(&g, &net).unwrap();
    let t = spanning_tree(&q, net.anchor).unwrap();
    let root_idx = t.root;
    let row = q.graph.dist_row(root_idx).unwrap();
    for i in 0..q.graph.n() {
        assert_eq!(t.depth[i], row[i] as usize);
    }
}
