use serde::Serialize;

use super::side::{SideView, Source};
use super::types::{consecutive_pair, label_succ, Case, PComponent, Side};
use crate::error::GraphError;
use crate::map::RotationMap;

/// A same-sign face whose corners all carry one pair `(λ, λ+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScharlemannCycle {
    pub side: Side,
    pub face: usize,
    pub labels: (u32, u32),
    pub length: usize,
    pub vertices: Vec<String>,
    pub arcs: Vec<String>,
    #[serde(skip)]
    pub vertex_indices: Vec<usize>,
    #[serde(skip)]
    pub arc_indices: Vec<usize>,
    /// P sphere carrying the cycle's edges (three-summand case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<PComponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_length: Option<u32>,
}

impl ScharlemannCycle {
    pub fn length_ok(&self) -> Option<bool> {
        self.expected_length.map(|l| l as usize == self.length)
    }
}

/// Scans every face of `view` that is not a ghost region.
pub fn scan_view(view: &SideView) -> Vec<(usize, u32)> {
    let ghost = view.ghost_faces();
    let mut out = Vec::new();
    for (fi, f) in view.map.faces().iter().enumerate() {
        if f.len() < 2 || ghost.contains(&fi) {
            continue;
        }
        let sign = view.signs[view.map.vertex_of(f.darts[0])];
        if f.darts
            .iter()
            .any(|&d| view.signs[view.map.vertex_of(d)] != sign)
        {
            continue;
        }
        let pairs: Vec<Option<u32>> = f
            .darts
            .iter()
            .map(|&d| {
                let (a, b) = view.map.corner_before(d);
                consecutive_pair(a, b, view.modulus)
            })
            .collect();
        if let Some(a) = pairs[0] {
            if pairs.iter().all(|&x| x == Some(a)) {
                out.push((fi, a));
            }
        }
    }
    out
}

fn build(view: &SideView, face: usize, a: u32) -> ScharlemannCycle {
    let f = &view.map.faces()[face];
    let vertex_indices: Vec<usize> = f.darts.iter().map(|&d| view.map.vertex_of(d)).collect();
    let arc_indices: Vec<usize> = f
        .darts
        .iter()
        .map(|&d| view.edge_arcs[RotationMap::edge_of(d)])
        .collect();
    ScharlemannCycle {
        side: view.side,
        face,
        labels: (a, label_succ(a, view.modulus)),
        length: f.len(),
        vertices: vertex_indices
            .iter()
            .map(|&v| view.vertex_ids[v].clone())
            .collect(),
        arcs: arc_indices
            .iter()
            .map(|&k| view.arc_ids[k].clone())
            .collect(),
        vertex_indices,
        arc_indices,
        component: None,
        expected_length: None,
    }
}

/// Annotates Q-side cycles with their sphere and expected length.
fn annotate(c: &mut ScharlemannCycle, case: Case, components: Option<&[PComponent]>) {
    let a = c.labels.0;
    let b = c.labels.1;
    match case {
        Case::General { l } => {
            c.expected_length = (a == 1).then_some(l);
        }
        Case::ThreeSummands { l1, l2, x, .. } => {
            c.component = match components {
                Some(comp) => {
                    let (ca, cb) = (comp[a as usize - 1], comp[b as usize - 1]);
                    (ca == cb).then_some(ca)
                }
                None if a == 1 => Some(PComponent::P1),
                None if a == x => Some(PComponent::P2),
                None => None,
            };
            c.expected_length = match c.component {
                Some(PComponent::P1) => Some(l1),
                Some(PComponent::P2) => Some(l2),
                None => None,
            };
        }
    }
}

pub fn scharlemann_in_view(
    view: &SideView,
    case: Case,
    components: Option<&[PComponent]>,
) -> Vec<ScharlemannCycle> {
    scan_view(view)
        .into_iter()
        .map(|(face, a)| {
            let mut c = build(view, face, a);
            if view.side == Side::Q {
                annotate(&mut c, case, components);
            }
            c
        })
        .collect()
}

/// Scharlemann cycles of `G_Q` (or of a patch's own map, ghost regions
/// excluded).
pub fn find_scharlemann_cycles(source: Source<'_>) -> Result<Vec<ScharlemannCycle>, GraphError> {
    find_scharlemann_cycles_on(source, Side::Q)
}

pub fn find_scharlemann_cycles_on(
    source: Source<'_>,
    side: Side,
) -> Result<Vec<ScharlemannCycle>, GraphError> {
    let view = SideView::of_source(source, side)?;
    Ok(match source {
        Source::Paired(d) => scharlemann_in_view(&view, d.case, Some(&d.p_components)),
        Source::Patch(p) => scharlemann_in_view(&view, p.case, None),
    })
}
