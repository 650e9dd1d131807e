use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use swt::enumerate::{
    canonical_arcs, case_consistent, enumerate_paired, enumerate_webs, knot_classes,
    run_property_sweep, run_property_sweep_with, GhostRule, SweepSpec,
};
use swt::graph::{
    find_scharlemann_cycles, load, validate, Case, Document, GraphDocument, GridPoint, PComponent,
    PairedIntersection, PatchArc, SideView, Sign, WebPatch,
};
use swt::web::{find_full_quota, verify_great_web};
use swt::BraidWord;

const GENERAL: Case = Case::General { l: 2 };

fn w1() -> WebPatch {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/w1.json");
    match load(&path).unwrap() {
        Document::Patch(p) => p,
        Document::Paired(_) => panic!("w1 is a patch"),
    }
}

fn ids(v: usize) -> Vec<String> {
    (1..=v).map(|i| format!("v{i}")).collect()
}

/// Every perfect matching of `ends`, as index pairs.
fn matchings(ends: &[(usize, u32)]) -> Vec<Vec<[(usize, u32); 2]>> {
    if ends.is_empty() {
        return vec![Vec::new()];
    }
    let first = ends[0];
    let mut out = Vec::new();
    for k in 1..ends.len() {
        let rest: Vec<(usize, u32)> = ends[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != k)
            .map(|(_, &e)| e)
            .collect();
        for mut m in matchings(&rest) {
            m.push([first, ends[k]]);
            out.push(m);
        }
    }
    out
}

/// Least sorted arc list over all vertex permutations.
fn naive_canonical(v: usize, arcs: &[PatchArc]) -> Vec<PatchArc> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..v {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                let free: Vec<usize> = (0..v).filter(|x| !p.contains(x)).collect();
                free.into_iter().map(move |x| [p.clone(), vec![x]].concat())
            })
            .collect();
    }
    perms
        .iter()
        .map(|perm| {
            let mut m: Vec<PatchArc> = arcs
                .iter()
                .map(|a| match *a {
                    PatchArc::Edge([x, y]) => {
                        let (x, y) = ((perm[x.0], x.1), (perm[y.0], y.1));
                        PatchArc::Edge([x.min(y), x.max(y)])
                    }
                    PatchArc::Ghost { vertex, label } => PatchArc::Ghost {
                        vertex: perm[vertex],
                        label,
                    },
                })
                .collect();
            m.sort();
            m
        })
        .min()
        .unwrap()
}

fn connected(v: usize, arcs: &[PatchArc]) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        if std::mem::replace(&mut seen[x], true) {
            continue;
        }
        for a in arcs {
            if let PatchArc::Edge([a, b]) = a {
                if a.0 == x {
                    stack.push(b.0);
                }
                if b.0 == x {
                    stack.push(a.0);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Generate every ghost placement and matching of the remaining ends,
/// keep what certifies, and count classes under renumbering.
fn naive_web_count(v: usize, p: u32, case: Case) -> usize {
    let regular = case.regular_labels(p);
    let mut placements: Vec<Vec<(usize, u32)>> = vec![Vec::new()];
    for &l in &regular {
        placements = placements
            .into_iter()
            .flat_map(|g| (0..v).map(move |x| [g.clone(), vec![(x, l)]].concat()))
            .collect();
    }
    let names = ids(v);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut classes = BTreeSet::new();
    for ghosts in placements {
        let ends: Vec<(usize, u32)> = (0..v)
            .flat_map(|x| (1..=p).map(move |l| (x, l)))
            .filter(|e| !ghosts.contains(e))
            .collect();
        for m in matchings(&ends) {
            if m.iter().any(|[a, b]| a.1 == b.1) {
                continue;
            }
            let mut arcs: Vec<PatchArc> = m.into_iter().map(PatchArc::Edge).collect();
            arcs.extend(
                ghosts
                    .iter()
                    .map(|&(vertex, label)| PatchArc::Ghost { vertex, label }),
            );
            if !connected(v, &arcs) {
                continue;
            }
            let patch = WebPatch::new(p, case, vec![Sign::Pos; v], arcs.clone());
            let Ok(view) = SideView::of_patch(&patch) else {
                continue;
            };
            if view.faces().iter().any(|f| f.length == 1 && !f.holds_ghost) {
                continue;
            }
            if !case_consistent(&patch)
                || !verify_great_web((&patch).into(), &names)
                    .unwrap()
                    .is_certified()
            {
                continue;
            }
            classes.insert(naive_canonical(v, &arcs));
        }
    }
    classes.len()
}

#[test]
fn web_stream_matches_naive_count() {
    for (v, p, l) in [(2, 4, 2), (3, 4, 2), (2, 6, 2), (2, 6, 3)] {
        let case = Case::General { l };
        let webs = enumerate_webs(v, p, case, GhostRule::Ledger).unwrap();
        assert_eq!(
            webs.len(),
            naive_web_count(v, p, case),
            "v = {v}, p = {p}, l = {l}"
        );
    }
}

#[test]
fn web_stream_contains_w1() {
    let w1 = w1();
    let key = canonical_arcs(2, &w1.arcs);
    let webs = enumerate_webs(2, 4, GENERAL, GhostRule::Ledger).unwrap();
    assert!(webs.iter().any(|w| w.arcs == key));
}

#[test]
fn one_vertex_has_no_webs() {
    assert!(enumerate_webs(1, 4, GENERAL, GhostRule::Ledger)
        .unwrap()
        .is_empty());
}

#[test]
fn two_vertex_webs_have_scharlemann_bigon() {
    let webs = enumerate_webs(2, 4, GENERAL, GhostRule::Ledger).unwrap();
    assert!(!webs.is_empty());
    for w in &webs {
        let cycles = find_scharlemann_cycles(w.into()).unwrap();
        assert!(
            cycles.iter().any(|c| c.labels == (1, 2) && c.length == 2),
            "{w:?}"
        );
    }
}

#[test]
fn web_stream_is_canonical_and_sorted() {
    for (v, p) in [(3, 4), (3, 6)] {
        let webs = enumerate_webs(v, p, GENERAL, GhostRule::Ledger).unwrap();
        let keys: Vec<Vec<PatchArc>> = webs.iter().map(|w| naive_canonical(v, &w.arcs)).collect();
        let distinct: BTreeSet<&Vec<PatchArc>> = keys.iter().collect();
        assert_eq!(distinct.len(), keys.len());
        assert!(webs.windows(2).all(|w| w[0].arcs < w[1].arcs));
    }
}

#[test]
fn relaxed_rule_is_a_superset() {
    let ledger = enumerate_webs(2, 6, GENERAL, GhostRule::Ledger).unwrap();
    let relaxed = enumerate_webs(2, 6, GENERAL, GhostRule::Relaxed).unwrap();
    assert!(ledger.iter().all(|w| relaxed.contains(w)));
    assert!(relaxed.len() > ledger.len());
}

#[test]
fn webs_with_l_equal_v_have_full_quota() {
    for (v, p, l) in [(2, 4, 2), (2, 6, 2), (3, 6, 3)] {
        let webs = enumerate_webs(v, p, Case::General { l }, GhostRule::Ledger).unwrap();
        for w in &webs {
            assert!(find_full_quota(w).unwrap().quota.is_some(), "{w:?}");
        }
    }
}

#[test]
fn paired_p4_q4_members_validate() {
    let configs = enumerate_paired(4, 4, GENERAL).unwrap();
    assert!(!configs.is_empty());
    for c in &configs {
        assert!(validate(&c.data).is_valid());
    }
}

fn grid_matchings(pts: &[GridPoint]) -> Vec<Vec<[GridPoint; 2]>> {
    if pts.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..pts.len() {
        let rest: Vec<GridPoint> = pts[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != k)
            .map(|(_, &e)| e)
            .collect();
        for mut m in grid_matchings(&rest) {
            m.push([pts[0], pts[k]]);
            out.push(m);
        }
    }
    out
}

/// Valid configurations with `v1` positive and `v2` negative, over every
/// arc matching and every balanced P sign pattern.
fn brute_q2_count(p: u32) -> usize {
    let pts: Vec<GridPoint> = (1..=2)
        .flat_map(|q| (1..=p).map(move |l| GridPoint { q, p: l }))
        .collect();
    let mut valid = 0;
    for mask in 0u32..1 << p {
        if mask.count_ones() * 2 != p {
            continue;
        }
        let p_signs: Vec<Sign> = (0..p)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            })
            .collect();
        for mut arcs in grid_matchings(&pts) {
            arcs.sort();
            let data = PairedIntersection::new(
                p,
                2,
                GENERAL,
                vec![Sign::Pos, Sign::Neg],
                p_signs.clone(),
                vec![PComponent::P1; p as usize],
                arcs,
            );
            valid += usize::from(validate(&data).is_valid());
        }
    }
    valid
}

#[test]
fn paired_q2_members_have_one_positive_vertex() {
    for p in [4, 6] {
        let configs = enumerate_paired(p, 2, GENERAL).unwrap();
        for c in &configs {
            assert_eq!(
                c.data.q_signs.iter().filter(|&&s| s == Sign::Pos).count(),
                1
            );
        }
        // the stream is empty at q = 2, and so is the brute-force set
        assert_eq!(configs.len(), brute_q2_count(p));
    }
}

#[test]
fn mirrored_members_validate_identically() {
    for (p, q) in [(4, 4), (6, 4)] {
        for c in enumerate_paired(p, q, GENERAL).unwrap() {
            let (a, b) = (validate(&c.data), validate(&c.data.mirror()));
            assert_eq!(a.is_valid(), b.is_valid());
            assert_eq!(a.violations.len(), b.violations.len());
        }
    }
}

#[test]
fn paired_stream_has_no_shift_duplicates() {
    let configs = enumerate_paired(6, 4, GENERAL).unwrap();
    let mut seen = HashSet::new();
    for c in &configs {
        let d = &c.data;
        // every cyclic relabeling of Q vertices, as a document
        let images: Vec<String> = (0..d.q)
            .map(|k| {
                let shift = |i: u32| (i - 1 + k) % d.q + 1;
                let mut signs = d.q_signs.clone();
                for i in 1..=d.q {
                    signs[shift(i) as usize - 1] = d.q_sign(i);
                }
                let mut arcs: Vec<_> = d
                    .arcs
                    .iter()
                    .map(|a| {
                        let mut e = a.map(|g| GridPoint {
                            q: shift(g.q),
                            p: g.p,
                        });
                        e.sort();
                        e
                    })
                    .collect();
                arcs.sort();
                format!("{signs:?} {:?} {arcs:?}", d.p_signs)
            })
            .collect();
        assert!(images.iter().all(|i| !seen.contains(i)));
        seen.insert(images[0].clone());
    }
}

#[test]
fn paired_webs_exist_at_p6_q4() {
    let configs = enumerate_paired(6, 4, GENERAL).unwrap();
    let webs: usize = configs.iter().map(|c| c.webs.len()).sum();
    assert!(webs > 0);
    for c in configs.iter().filter(|c| !c.webs.is_empty()) {
        let doc = GraphDocument::from_paired(&c.data);
        assert_eq!(
            GraphDocument::from_json(&doc.to_json())
                .unwrap()
                .into_paired()
                .unwrap(),
            c.data
        );
    }
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(enumerate_paired(3, 4, GENERAL).is_err());
    assert!(enumerate_paired(4, 0, GENERAL).is_err());
    assert!(enumerate_webs(0, 4, GENERAL, GhostRule::Ledger).is_err());
    assert!(enumerate_webs(2, 5, GENERAL, GhostRule::Ledger).is_err());
}

/// Cyclic commutation classes of all arrangements of a letter multiset,
/// by breadth-first closure under far commutation and rotation.
fn naive_knot_classes(exponents: &[usize]) -> usize {
    let mut letters: Vec<u32> = exponents
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| vec![i as u32 + 1; e])
        .collect();
    let n = exponents.len() as u32 + 1;
    let mut all = BTreeSet::new();
    loop {
        all.insert(letters.clone());
        let Some(i) = (0..letters.len() - 1)
            .rev()
            .find(|&i| letters[i] < letters[i + 1])
        else {
            break;
        };
        let j = (i + 1..letters.len())
            .rev()
            .find(|&j| letters[j] > letters[i])
            .unwrap();
        letters.swap(i, j);
        letters[i + 1..].reverse();
    }
    let mut seen = HashSet::new();
    let mut classes = 0;
    for w in &all {
        if seen.contains(w) {
            continue;
        }
        let signed: Vec<i32> = w.iter().map(|&x| x as i32).collect();
        let knot = BraidWord::from_signed(Some(n), &signed)
            .unwrap()
            .components()
            == 1;
        let mut queue = VecDeque::from([w.clone()]);
        seen.insert(w.clone());
        while let Some(x) = queue.pop_front() {
            let mut next = Vec::new();
            let mut r = x.clone();
            r.rotate_left(1);
            next.push(r);
            for k in 0..x.len() - 1 {
                if x[k].abs_diff(x[k + 1]) >= 2 {
                    let mut y = x.clone();
                    y.swap(k, k + 1);
                    next.push(y);
                }
            }
            for y in next {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        if knot {
            classes += 1;
        }
    }
    classes
}

#[test]
fn knot_classes_match_naive_closure() {
    for e in [
        vec![2, 2],
        vec![3, 2],
        vec![2, 2, 2],
        vec![3, 2, 2],
        vec![2, 3, 2],
        vec![2, 2, 2, 2],
        vec![3, 3, 2],
    ] {
        let classes = knot_classes(&e);
        assert_eq!(classes.len(), naive_knot_classes(&e), "{e:?}");
        for w in &classes {
            assert_eq!(w.components(), 1);
            let counts: Vec<usize> = (1..=e.len()).map(|i| w.occurrences(i as u32)).collect();
            assert_eq!(counts, e);
        }
    }
}

fn spec(text: &str) -> SweepSpec {
    serde_json::from_str(text).unwrap()
}

#[test]
fn web_sweep_divisibility_and_quota() {
    let s = spec(
        r#"{"target": "webs", "v": [1, 2, 3], "p": [4, 6], "cases": [{"type": "general", "l": 2}, {"type": "general", "l": 3}],
            "properties": ["l_divides_v", "gamma_valences", "subregion_balance", "cyclic_shift", "lambda_dichotomy", "quota_when_l_equals_v"]}"#,
    );
    let m = run_property_sweep(&s).unwrap();
    assert!(m.counterexamples.is_empty(), "{:?}", m.counterexamples);
    assert!(m.count > 0);
    assert!(m.tallies.values().all(|t| t.failed == 0));
}

#[test]
fn braid_sweep_components() {
    let s = spec(
        r#"{"target": "braids", "n": [2, 3, 4], "max_len": 6, "properties": ["components_match", "moves_preserve"]}"#,
    );
    let m = run_property_sweep(&s).unwrap();
    assert!(m.counterexamples.is_empty());
    assert!(m.count > 0);
}

#[test]
fn manifests_are_deterministic() {
    let s = spec(
        r#"{"target": "paired", "p": [4], "q": [2, 4], "cases": [{"type": "general", "l": 2}],
            "properties": ["euler", "parity", "no_monogon", "mirror_invariance", "scharlemann_oracle"]}"#,
    );
    let a = run_property_sweep(&s).unwrap().to_json();
    let b = run_property_sweep_with(&s, 2).unwrap().to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"elapsed_ms\": 0"));
    let sampled = spec(
        r#"{"target": "braids", "sample": {"seed": 7, "count": 200, "max_strands": 6, "max_len": 12},
            "properties": ["components_match", "moves_preserve"]}"#,
    );
    assert_eq!(
        run_property_sweep(&sampled).unwrap().to_json(),
        run_property_sweep(&sampled).unwrap().to_json()
    );
}

#[test]
fn sweep_rejects_mismatched_property() {
    let s = spec(r#"{"target": "braids", "n": [2], "max_len": 2, "properties": ["euler"]}"#);
    assert!(run_property_sweep(&s).is_err());
}
