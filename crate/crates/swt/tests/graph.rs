use std::path::PathBuf;

use swt::enumerate::enumerate_paired;
use swt::graph::{
    export_dot, find_scharlemann_cycles, find_scharlemann_cycles_on, load, trace_faces,
    trace_lambda_path, validate, Case, Check, Document, GraphDocument, GridPoint, LambdaPath,
    PComponent, PairedIntersection, PatchArc, Side, SideView, Sign, WebPatch,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn w1() -> WebPatch {
    match load(&fixture("w1.json")).unwrap() {
        Document::Patch(p) => p,
        Document::Paired(_) => panic!("w1 is a patch"),
    }
}

fn paired(name: &str) -> PairedIntersection {
    match load(&fixture(name)).unwrap() {
        Document::Paired(d) => d,
        Document::Patch(_) => panic!("{name} is a paired configuration"),
    }
}

const GENERAL: Case = Case::General { l: 2 };

/// V - E + F of a closed side, counted from traced faces.
fn euler(data: &PairedIntersection, side: Side) -> i64 {
    let faces = trace_faces(data.into(), side).unwrap();
    let v = match side {
        Side::Q => data.q,
        Side::P => data.p,
    } as i64;
    v - data.arcs.len() as i64 + faces.len() as i64
}

#[test]
fn valid_p4_q4_has_empty_report() {
    let report = validate(&paired("p4q4_valid.json"));
    assert!(report.is_valid(), "{:?}", report.violations);
}

#[test]
fn moved_endpoint_names_both_grid_points() {
    let report = validate(&paired("broken.json"));
    let grid: Vec<&str> = report
        .violations
        .iter()
        .filter(|v| v.check == Check::Grid)
        .map(|v| v.location.as_str())
        .collect();
    assert_eq!(grid, vec!["(v1, u1)", "(v1, u2)"]);
}

#[test]
fn rewired_arcs_give_genus_violation() {
    let report = validate(&paired("nonplanar.json"));
    assert!(report.has(Check::Genus));
    assert!(report.violations.iter().all(|v| v.check == Check::Genus));
    let data = paired("nonplanar.json");
    assert!(euler(&data, Side::Q) < 2 || euler(&data, Side::P) < 2);
}

#[test]
fn single_vertex_without_arcs_has_one_face() {
    let patch = WebPatch::new(2, GENERAL, vec![Sign::Pos], Vec::new());
    assert_eq!(trace_faces((&patch).into(), Side::Q).unwrap().len(), 1);
}

#[test]
fn valid_p4_q4_has_six_faces() {
    let data = paired("p4q4_valid.json");
    for side in [Side::Q, Side::P] {
        let faces = trace_faces((&data).into(), side).unwrap();
        assert_eq!(faces.len(), 6);
        assert_eq!(euler(&data, side), 2);
        // every arc end side lies on exactly one face
        let sides: usize = faces.iter().map(|f| f.length).sum();
        assert_eq!(sides, 2 * data.arcs.len());
    }
}

#[test]
fn dangling_ends_have_no_faces() {
    assert!(trace_faces((&w1()).into(), Side::Q).is_err());
}

#[test]
fn w1_without_ghosts_has_scharlemann_bigon_face() {
    let patch = w1().without_ghosts();
    let faces = trace_faces((&patch).into(), Side::Q).unwrap();
    assert!(faces.iter().any(|f| f.length == 2
        && f.corners
            .iter()
            .all(|c| c.labels == (1, 2) || c.labels == (2, 1))));
}

#[test]
fn w1_has_one_scharlemann_bigon() {
    let cycles = find_scharlemann_cycles((&w1()).into()).unwrap();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles[0].labels, (1, 2));
    assert_eq!(cycles[0].length, 2);
    let mut arcs = cycles[0].arcs.clone();
    arcs.sort();
    assert_eq!(arcs, ["a1", "a2"]);
}

#[test]
fn w1_relabeled_a3_is_not_a_valid_pairing() {
    // W1 with a3 = (v1:3, v2:3): both ends at u3 would be a loop in G_P
    let data = PairedIntersection::new(
        4,
        2,
        GENERAL,
        vec![Sign::Pos, Sign::Pos],
        vec![Sign::Pos, Sign::Neg, Sign::Pos, Sign::Neg],
        vec![PComponent::P1; 4],
        vec![
            [gp(1, 1), gp(2, 2)],
            [gp(1, 2), gp(2, 1)],
            [gp(1, 3), gp(2, 3)],
            [gp(1, 4), gp(2, 4)],
        ],
    );
    assert!(validate(&data).has(Check::Parity));
}

fn gp(q: u32, p: u32) -> GridPoint {
    GridPoint { q, p }
}

#[test]
fn no_scharlemann_cycle_on_p_side() {
    let configs = enumerate_paired(4, 4, GENERAL).unwrap();
    assert!(!configs.is_empty());
    for c in &configs {
        assert!(find_scharlemann_cycles_on((&c.data).into(), Side::P)
            .unwrap()
            .is_empty());
    }
}

#[test]
fn lambda_path_closes_on_scharlemann_bigon() {
    match trace_lambda_path((&w1()).into(), 1, "v1").unwrap() {
        LambdaPath::GreatCycle {
            mut arcs, steps, ..
        } => {
            assert_eq!(steps, 2);
            arcs.sort();
            assert_eq!(arcs, ["a1", "a2"]);
        }
        other => panic!("expected a cycle, got {other:?}"),
    }
}

#[test]
fn lambda_path_hits_ghost() {
    assert_eq!(
        trace_lambda_path((&w1()).into(), 3, "v1").unwrap(),
        LambdaPath::GhostHit {
            vertex: "v2".into(),
            label: 3,
            steps: 1
        }
    );
}

#[test]
fn lambda_path_on_ghost_at_start() {
    let patch = WebPatch::new(
        4,
        GENERAL,
        vec![Sign::Pos],
        vec![PatchArc::Ghost {
            vertex: 0,
            label: 3,
        }],
    );
    assert_eq!(
        trace_lambda_path((&patch).into(), 3, "v1").unwrap(),
        LambdaPath::GhostHit {
            vertex: "v1".into(),
            label: 3,
            steps: 0
        }
    );
}

fn count(dot: &str, pat: &str) -> usize {
    dot.lines().filter(|l| l.contains(pat)).count()
}

#[test]
fn dot_of_w1_counts_records() {
    let dot = export_dot((&w1()).into(), Side::Q).unwrap();
    assert_eq!(count(&dot, "[label=\"v"), 2);
    assert_eq!(count(&dot, "shape=point"), 2);
    assert_eq!(count(&dot, "-- \"v"), 3);
}

#[test]
fn dot_of_empty_patch_is_header_only() {
    let patch = WebPatch::new(4, GENERAL, Vec::new(), Vec::new());
    let dot = export_dot((&patch).into(), Side::Q).unwrap();
    assert_eq!(dot.trim(), "graph G_Q {\n}");
}

#[test]
fn dot_of_p4_q4_counts_records() {
    let dot = export_dot((&paired("p4q4_valid.json")).into(), Side::Q).unwrap();
    assert_eq!(count(&dot, "[label=\"v"), 4);
    assert_eq!(count(&dot, "-- \"v"), 8);
    assert_eq!(
        dot,
        export_dot((&paired("p4q4_valid.json")).into(), Side::Q).unwrap()
    );
}

#[test]
fn rotations_derive_identically_twice() {
    let data = paired("p6q4.json");
    for side in [Side::Q, Side::P] {
        let a = SideView::of_paired(&data, side).unwrap();
        let b = SideView::of_paired(&data, side).unwrap();
        assert_eq!(a.faces(), b.faces());
    }
}

#[test]
fn documents_round_trip() {
    for name in ["p4q4_valid.json", "p6q4.json", "nonplanar.json"] {
        let data = paired(name);
        let doc = GraphDocument::from_paired(&data);
        let again = GraphDocument::from_json(&doc.to_json())
            .unwrap()
            .into_paired()
            .unwrap();
        assert_eq!(again, data);
    }
    let patch = w1();
    let doc = GraphDocument::from_patch(&patch);
    assert_eq!(
        GraphDocument::from_json(&doc.to_json())
            .unwrap()
            .into_patch()
            .unwrap(),
        patch
    );
}

#[test]
fn enumerated_configurations_satisfy_parity_and_no_monogon() {
    for (p, q) in [(4, 2), (4, 4), (6, 2), (6, 4)] {
        for c in enumerate_paired(p, q, GENERAL).unwrap() {
            let d = &c.data;
            for arc in &d.arcs {
                let q_same = d.q_sign(arc[0].q) == d.q_sign(arc[1].q);
                let p_same = d.p_sign(arc[0].p) == d.p_sign(arc[1].p);
                assert_ne!(q_same, p_same, "parity on {arc:?}");
            }
            for side in [Side::Q, Side::P] {
                let faces = trace_faces(d.into(), side).unwrap();
                assert!(faces.iter().all(|f| f.length > 1), "monogon");
            }
        }
    }
}
