use std::collections::VecDeque;

use serde::Serialize;

use super::great::GreatWeb;
use crate::error::WebError;
use crate::graph::{
    find_scharlemann_cycles, Case, PComponent, PairedIntersection, Side, SideView, Sign,
};
use crate::map::RotationMap;

/// A Γ-edge: ends `(P label λ, Q label i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    pub arc: String,
    pub ends: [(u32, u32); 2],
}

/// A Scharlemann cycle of the web, as Γ-edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchorCycle {
    pub labels: (u32, u32),
    pub edges: Vec<usize>,
    /// Local web vertex indices on the cycle.
    pub vertices: Vec<usize>,
}

/// The web's edges read on the P side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaGraph {
    pub p: u32,
    pub case: Case,
    pub v: usize,
    /// Q labels are taken mod `q`.
    pub q: u32,
    pub p_signs: Vec<Sign>,
    pub p_components: Vec<PComponent>,
    /// Q label of each web vertex.
    pub web_q_labels: Vec<u32>,
    pub edges: Vec<GammaEdge>,
    pub valence: Vec<usize>,
    pub bipartite: bool,
    /// Odd number of non-Γ ends between consecutive Γ-ends everywhere.
    /// Unknown when only the web is available.
    pub odd_spacing: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub spacing_notes: Vec<String>,
    pub cycles: Vec<AnchorCycle>,
    /// Built from a planar realization of a bare web rather than from a
    /// full pairing.
    pub realized: bool,
    #[serde(skip)]
    pub mirrored: bool,
}

impl GammaGraph {
    /// Rotation map on `u_1..u_p` carrying the chosen Γ-edges, keyed by Q
    /// label.
    pub fn map_of(&self, edges: &[usize]) -> RotationMap {
        let ascending = self
            .p_signs
            .iter()
            .map(|&s| (s == Sign::Pos) != self.mirrored)
            .collect();
        let ends: Vec<[(usize, u32); 2]> = edges
            .iter()
            .map(|&k| {
                let [(a, i), (b, j)] = self.edges[k].ends;
                [(a as usize - 1, i), (b as usize - 1, j)]
            })
            .collect();
        RotationMap::new(ascending, &ends)
    }

    pub fn full_map(&self) -> RotationMap {
        self.map_of(&(0..self.edges.len()).collect::<Vec<_>>())
    }

    pub fn cycle_on(&self, a: u32) -> Option<&AnchorCycle> {
        self.cycles.iter().find(|c| c.labels.0 == a)
    }
}

fn web_cycles(web: &GreatWeb) -> Vec<AnchorCycle> {
    let cycles = find_scharlemann_cycles((&web.patch).into()).unwrap_or_default();
    let edge_ids = &web.patch.arc_ids[..web.edges.len()];
    cycles
        .into_iter()
        .map(|c| AnchorCycle {
            labels: c.labels,
            edges: c
                .arcs
                .iter()
                .map(|id| {
                    edge_ids
                        .iter()
                        .position(|e| e == id)
                        .expect("cycle edge in web")
                })
                .collect(),
            vertices: c.vertex_indices,
        })
        .collect()
}

fn gamma_edges(web: &GreatWeb, q_labels: &[u32]) -> Vec<GammaEdge> {
    web.patch
        .edges()
        .zip(&web.edges)
        .map(|([(a, la), (b, lb)], id)| GammaEdge {
            arc: id.clone(),
            ends: [(la, q_labels[a]), (lb, q_labels[b])],
        })
        .collect()
}

/// Counts valences and checks them against `v - 1` (regular) and `v`
/// (Scharlemann).
pub fn check_valences(gamma: &GammaGraph) -> Result<(), WebError> {
    for l in 1..=gamma.p {
        let expected = if gamma.case.is_scharlemann_label(l) {
            gamma.v
        } else {
            gamma.v - 1
        };
        let found = gamma.valence[l as usize - 1];
        if found != expected {
            return Err(WebError::Valence {
                vertex: l,
                found,
                expected,
            });
        }
    }
    Ok(())
}

fn valences(p: u32, edges: &[GammaEdge]) -> Vec<usize> {
    let mut val = vec![0; p as usize];
    for e in edges {
        for (l, _) in e.ends {
            val[l as usize - 1] += 1;
        }
    }
    val
}

fn is_bipartite(signs: &[Sign], edges: &[GammaEdge]) -> bool {
    edges
        .iter()
        .all(|e| signs[e.ends[0].0 as usize - 1] != signs[e.ends[1].0 as usize - 1])
}

/// Γ for a certified web inside a full paired configuration.
pub fn build_gamma(data: &PairedIntersection, web: &GreatWeb) -> Result<GammaGraph, WebError> {
    let q_labels: Vec<u32> = web.vertex_indices.iter().map(|&i| i as u32 + 1).collect();
    let edges = gamma_edges(web, &q_labels);
    let view = SideView::of_paired(data, Side::P)?;
    let mut notes = Vec::new();
    for u in 0..view.vertex_count() {
        let rot = view.map.rotation(u);
        let marks: Vec<usize> = rot
            .iter()
            .enumerate()
            .filter(|(_, &d)| {
                web.edge_arcs
                    .contains(&view.edge_arcs[RotationMap::edge_of(d)])
            })
            .map(|(k, _)| k)
            .collect();
        for (j, &k) in marks.iter().enumerate() {
            let next = marks[(j + 1) % marks.len()];
            let gap = (next + rot.len() - k - 1) % rot.len();
            let gap = if marks.len() == 1 { rot.len() - 1 } else { gap };
            if gap % 2 == 0 {
                notes.push(format!(
                    "u{}: {gap} ends between Gamma-ends at Q labels {} and {}",
                    u + 1,
                    view.map.key_of(rot[k]),
                    view.map.key_of(rot[next])
                ));
            }
        }
    }
    let gamma = GammaGraph {
        p: data.p,
        case: data.case,
        v: web.v,
        q: data.q,
        bipartite: is_bipartite(&data.p_signs, &edges),
        valence: valences(data.p, &edges),
        p_signs: data.p_signs.clone(),
        p_components: data.p_components.clone(),
        web_q_labels: q_labels,
        edges,
        odd_spacing: Some(notes.is_empty()),
        spacing_notes: notes,
        cycles: web_cycles(web),
        realized: false,
        mirrored: data.mirrored,
    };
    check_valences(&gamma)?;
    Ok(gamma)
}

/// Γ for a web without a surrounding pairing: web vertices take Q labels
/// `1, 3, .., 2v - 1` in some cyclic order, P signs come from a proper
/// 2-colouring and, with three summands, whole Γ components are placed on
/// `P1` or `P2`. The first choice (in a fixed search order) under which Γ
/// is planar is returned.
pub fn realize_gamma(web: &GreatWeb) -> Result<GammaGraph, WebError> {
    let p = web.p as usize;
    let v = web.v;
    let base_edges = gamma_edges(web, &vec![0; v]);
    // Γ components over P labels
    let mut comp = vec![usize::MAX; p];
    let mut colour = vec![false; p];
    let mut adj = vec![Vec::new(); p];
    for e in &base_edges {
        let (a, b) = (e.ends[0].0 as usize - 1, e.ends[1].0 as usize - 1);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut ncomp = 0;
    for s in 0..p {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = ncomp;
                    colour[y] = !colour[x];
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return Err(WebError::Unrealizable);
                }
            }
        }
        ncomp += 1;
    }

    let placements = sphere_placements(web.case, &comp, ncomp)?;
    let cycles = web_cycles(web);
    let mut rest: Vec<usize> = (1..v).collect();
    loop {
        let mut q_labels = vec![0; v];
        q_labels[0] = 1;
        for (pos, &w) in rest.iter().enumerate() {
            q_labels[w] = 2 * pos as u32 + 3;
        }
        let edges = gamma_edges(web, &q_labels);
        for flips in 0..(1u64 << ncomp.min(63)) {
            let p_signs: Vec<Sign> = (0..p)
                .map(|u| {
                    let c = colour[u] != (flips >> comp[u] & 1 == 1);
                    if c {
                        Sign::Neg
                    } else {
                        Sign::Pos
                    }
                })
                .collect();
            for place in &placements {
                let gamma = GammaGraph {
                    p: web.p,
                    case: web.case,
                    v,
                    q: 2 * v as u32,
                    bipartite: true,
                    valence: valences(web.p, &edges),
                    p_signs: p_signs.clone(),
                    p_components: place.clone(),
                    web_q_labels: q_labels.clone(),
                    edges: edges.clone(),
                    odd_spacing: None,
                    spacing_notes: Vec::new(),
                    cycles: cycles.clone(),
                    realized: true,
                    mirrored: web.patch.mirrored,
                };
                if gamma.full_map().is_planar() {
                    check_valences(&gamma)?;
                    return Ok(gamma);
                }
            }
        }
        if !next_permutation(&mut rest) {
            return Err(WebError::Unrealizable);
        }
    }
}

/// Every assignment of Γ components to spheres consistent with the case.
fn sphere_placements(
    case: Case,
    comp: &[usize],
    ncomp: usize,
) -> Result<Vec<Vec<PComponent>>, WebError> {
    let Case::ThreeSummands { x, p1, .. } = case else {
        return Ok(vec![vec![PComponent::P1; comp.len()]]);
    };
    let c1 = comp[0];
    let c2 = comp[x as usize - 1];
    if c1 == comp[1] && c1 == c2 {
        return Err(WebError::Unrealizable);
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << ncomp.min(63)) {
        let on_p2 = |c: usize| mask >> c & 1 == 1;
        if on_p2(c1) || !on_p2(c2) || on_p2(comp[1]) || !on_p2(comp[x as usize]) {
            continue;
        }
        let place: Vec<PComponent> = comp
            .iter()
            .map(|&c| {
                if on_p2(c) {
                    PComponent::P2
                } else {
                    PComponent::P1
                }
            })
            .collect();
        if place.iter().filter(|&&c| c == PComponent::P1).count() == p1 as usize {
            out.push(place);
        }
    }
    if out.is_empty() {
        return Err(WebError::Unrealizable);
    }
    Ok(out)
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
