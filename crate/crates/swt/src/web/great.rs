use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{Case, PatchArc, SideView, Sign, Source, WebPatch};
use crate::map::RotationMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ghost {
    pub vertex: String,
    pub label: u32,
}

/// A certified great web: a same-sign vertex set in a disk whose only
/// exits are its ghosts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreatWeb {
    pub p: u32,
    pub case: Case,
    pub sign: Sign,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub ghosts: Vec<Ghost>,
    pub v: usize,
    /// Face of the web's own map that holds everything outside the web.
    pub disk_face: Option<usize>,
    /// Source vertex index of each web vertex.
    #[serde(skip)]
    pub vertex_indices: Vec<usize>,
    /// Source arc index of each web edge.
    #[serde(skip)]
    pub edge_arcs: Vec<usize>,
    /// The web on its own: edges plus ghost stubs, indexed locally.
    #[serde(skip)]
    pub patch: WebPatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certification {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub web: Option<GreatWeb>,
    pub violations: Vec<String>,
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        self.web.is_some()
    }
}

/// Where an end of a web vertex goes.
enum Exit {
    Inside,
    /// Leaves the web along source dart `d` or a source stub.
    Dart(usize),
    Stub,
}

/// Checks every great-web condition for `vertices` on the Q side.
pub fn verify_great_web(
    source: Source<'_>,
    vertices: &[&str],
) -> Result<Certification, GraphError> {
    let view = SideView::of_source(source, crate::graph::Side::Q)?;
    let (p, case) = match source {
        Source::Paired(d) => (d.p, d.case),
        Source::Patch(pt) => (pt.p, pt.case),
    };
    let mut members: Vec<usize> = Vec::new();
    for id in vertices {
        let k = view
            .vertex_ids
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))?;
        if !members.contains(&k) {
            members.push(k);
        }
    }
    members.sort_unstable();
    Ok(certify(&view, p, case, &members))
}

pub(crate) fn certify(view: &SideView, p: u32, case: Case, members: &[usize]) -> Certification {
    let mut violations = Vec::new();
    if members.is_empty() {
        return Certification {
            web: None,
            violations: vec!["web vertex set is empty".into()],
        };
    }
    let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let sign = view.signs[members[0]];
    for &m in members {
        if view.signs[m] != sign {
            violations.push(format!(
                "{} has sign {} but {} has sign {sign}",
                view.vertex_ids[m], view.signs[m], view.vertex_ids[members[0]]
            ));
        }
    }

    let map = &view.map;
    let mut ends: Vec<(usize, u32, Exit)> = Vec::new();
    let mut edges: Vec<(usize, [(usize, u32); 2])> = Vec::new();
    for e in 0..map.edge_count() {
        let (d0, d1) = (2 * e, 2 * e + 1);
        let (a, b) = (map.vertex_of(d0), map.vertex_of(d1));
        match (local.get(&a), local.get(&b)) {
            (Some(&la), Some(&lb)) => {
                edges.push((e, [(la, map.key_of(d0)), (lb, map.key_of(d1))]));
                ends.push((la, map.key_of(d0), Exit::Inside));
                ends.push((lb, map.key_of(d1), Exit::Inside));
            }
            (Some(&la), None) => ends.push((la, map.key_of(d0), Exit::Dart(d0))),
            (None, Some(&lb)) => ends.push((lb, map.key_of(d1), Exit::Dart(d1))),
            (None, None) => {}
        }
    }
    for &(v, l, _) in &view.stubs {
        if let Some(&lv) = local.get(&v) {
            ends.push((lv, l, Exit::Stub));
        }
    }
    ends.sort_by_key(|&(v, l, _)| (v, l));

    // one end per label at every vertex
    for (k, &m) in members.iter().enumerate() {
        let have: Vec<u32> = ends.iter().filter(|e| e.0 == k).map(|e| e.1).collect();
        let missing: Vec<u32> = (1..=p).filter(|l| !have.contains(l)).collect();
        if !missing.is_empty() {
            violations.push(format!(
                "{} has no end labeled {missing:?}",
                view.vertex_ids[m]
            ));
        }
    }
    for (e, [(a, la), (b, lb)]) in &edges {
        if la == lb {
            violations.push(format!(
                "edge {} has label {la} at both ends ({} and {})",
                view.arc_ids[view.edge_arcs[*e]],
                view.vertex_ids[members[*a]],
                view.vertex_ids[members[*b]]
            ));
        }
    }

    let ghosts: Vec<(usize, u32)> = ends
        .iter()
        .filter(|e| !matches!(e.2, Exit::Inside))
        .map(|e| (e.0, e.1))
        .collect();
    let want = case.ghost_count(p) as usize;
    if ghosts.len() != want {
        violations.push(format!("ghost count {} != {want}", ghosts.len()));
    }
    for l in case.scharlemann_labels() {
        for g in ghosts.iter().filter(|g| g.1 == l) {
            violations.push(format!(
                "{} has a ghost at Scharlemann label {l}",
                view.vertex_ids[members[g.0]]
            ));
        }
    }
    for l in case.regular_labels(p) {
        let n = ghosts.iter().filter(|g| g.1 == l).count();
        if n != 1 {
            violations.push(format!(
                "regular label {l} has {n} ghosts, expected exactly one"
            ));
        }
    }

    // the web's own map
    let signs: Vec<Sign> = vec![sign; members.len()];
    let sub_edges: Vec<[(usize, u32); 2]> = edges.iter().map(|e| e.1).collect();
    let ascending = vec![(sign == Sign::Pos) != view.mirrored; members.len()];
    let sub = RotationMap::new(ascending, &sub_edges);
    let comps = sub.components();
    if comps.iter().any(|&c| c != 0) {
        violations.push("web vertices are not connected by web edges".into());
    }
    if !sub.is_planar() {
        violations.push("web edges do not embed in a disk".into());
    }

    // disk condition: classes of source faces once non-web material is removed
    let faces = map.faces().len();
    let mut uf = UnionFind::<usize>::new(faces);
    let inside: BTreeSet<usize> = edges.iter().map(|e| e.0).collect();
    for e in 0..map.edge_count() {
        if !inside.contains(&e) {
            uf.union(map.face_of_dart(2 * e), map.face_of_dart(2 * e + 1));
        }
    }
    let source_comp = map.components();
    let web_comp = source_comp[members[0]];
    let mut outside: BTreeSet<usize> = BTreeSet::new();
    for (w, &c) in source_comp.iter().enumerate() {
        if c == web_comp && !local.contains_key(&w) {
            outside.insert(uf.find(map.faces_at(w)[0]));
        }
    }
    let mut ghost_faces: Vec<usize> = Vec::new();
    for (v, l, exit) in &ends {
        let class = match exit {
            Exit::Inside => continue,
            Exit::Dart(d) => uf.find(map.face_of_dart(*d)),
            Exit::Stub => uf.find(map.locate(members[*v], *l)),
        };
        outside.insert(class);
        ghost_faces.push(sub.locate(*v, *l));
    }
    if outside.len() > 1 {
        violations.push(format!(
            "non-web material lies in {} different faces of the web",
            outside.len()
        ));
    }
    ghost_faces.sort_unstable();
    ghost_faces.dedup();
    for (fi, f) in sub.faces().iter().enumerate() {
        if f.len() == 1 && !ghost_faces.contains(&fi) {
            violations.push(format!("interior face {fi} is a monogon"));
        }
    }

    if !violations.is_empty() {
        return Certification {
            web: None,
            violations,
        };
    }
    let mut arcs: Vec<PatchArc> = sub_edges.iter().map(|&e| PatchArc::Edge(e)).collect();
    arcs.extend(
        ghosts
            .iter()
            .map(|&(vertex, label)| PatchArc::Ghost { vertex, label }),
    );
    let mut arc_ids: Vec<String> = edges
        .iter()
        .map(|e| view.arc_ids[view.edge_arcs[e.0]].clone())
        .collect();
    for (v, l, exit) in &ends {
        match exit {
            Exit::Inside => {}
            Exit::Dart(d) => arc_ids.push(view.dart_arc_id(*d).to_string()),
            Exit::Stub => {
                let k = view
                    .stubs
                    .iter()
                    .find(|s| s.0 == members[*v] && s.1 == *l)
                    .unwrap()
                    .2;
                arc_ids.push(view.arc_ids[k].clone());
            }
        }
    }
    let vertex_ids: Vec<String> = members
        .iter()
        .map(|&m| view.vertex_ids[m].clone())
        .collect();
    let patch = WebPatch {
        p,
        case,
        vertex_ids: vertex_ids.clone(),
        signs,
        arcs,
        arc_ids,
        mirrored: view.mirrored,
    };
    Certification {
        web: Some(GreatWeb {
            p,
            case,
            sign,
            edges: edges
                .iter()
                .map(|e| view.arc_ids[view.edge_arcs[e.0]].clone())
                .collect(),
            ghosts: ghosts
                .iter()
                .map(|&(v, label)| Ghost {
                    vertex: vertex_ids[v].clone(),
                    label,
                })
                .collect(),
            vertices: vertex_ids,
            v: members.len(),
            disk_face: ghost_faces.first().copied(),
            vertex_indices: members.to_vec(),
            edge_arcs: edges.iter().map(|e| view.edge_arcs[e.0]).collect(),
            patch,
        }),
        violations,
    }
}
