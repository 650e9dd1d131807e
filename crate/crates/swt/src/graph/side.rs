use serde::Serialize;

use super::types::{PairedIntersection, PatchArc, Side, Sign, WebPatch};
use crate::error::GraphError;
use crate::map::{End, RotationMap};

/// Either input form accepted by the read-only graph queries.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Paired(&'a PairedIntersection),
    Patch(&'a WebPatch),
}

impl<'a> From<&'a PairedIntersection> for Source<'a> {
    fn from(d: &'a PairedIntersection) -> Self {
        Source::Paired(d)
    }
}

impl<'a> From<&'a WebPatch> for Source<'a> {
    fn from(p: &'a WebPatch) -> Self {
        Source::Patch(p)
    }
}

/// One side of the picture as an embedded graph with forced rotations.
#[derive(Debug, Clone)]
pub struct SideView {
    pub side: Side,
    /// Labels on this side are taken mod `modulus` (p on Q, q on P).
    pub modulus: u32,
    pub vertex_ids: Vec<String>,
    pub signs: Vec<Sign>,
    /// Map edge -> index into the source arc list.
    pub edge_arcs: Vec<usize>,
    pub arc_ids: Vec<String>,
    /// Ghost stubs `(vertex, label, source arc)`.
    pub stubs: Vec<(usize, u32, usize)>,
    pub mirrored: bool,
    pub map: RotationMap,
}

fn ascending(signs: &[Sign], mirrored: bool) -> Vec<bool> {
    signs
        .iter()
        .map(|&s| (s == Sign::Pos) != mirrored)
        .collect()
}

fn check_distinct(
    ids: &[String],
    edges: &[[End; 2]],
    stubs: &[(usize, u32, usize)],
) -> Result<(), GraphError> {
    let mut seen = std::collections::BTreeSet::new();
    let all = edges
        .iter()
        .flat_map(|e| e.iter().copied())
        .chain(stubs.iter().map(|&(v, l, _)| (v, l)));
    for (v, k) in all {
        if !seen.insert((v, k)) {
            return Err(GraphError::Inconsistent(format!(
                "vertex {} has two ends labeled {k}; its rotation is undefined",
                ids[v]
            )));
        }
    }
    Ok(())
}

impl SideView {
    pub fn of_paired(data: &PairedIntersection, side: Side) -> Result<Self, GraphError> {
        let (modulus, vertex_ids, signs): (u32, Vec<String>, Vec<Sign>) = match side {
            Side::Q => (
                data.p,
                (1..=data.q).map(|i| format!("v{i}")).collect(),
                data.q_signs.clone(),
            ),
            Side::P => (
                data.q,
                (1..=data.p).map(|l| format!("u{l}")).collect(),
                data.p_signs.clone(),
            ),
        };
        let edges: Vec<[End; 2]> = data
            .arcs
            .iter()
            .map(|a| match side {
                Side::Q => [(a[0].q as usize - 1, a[0].p), (a[1].q as usize - 1, a[1].p)],
                Side::P => [(a[0].p as usize - 1, a[0].q), (a[1].p as usize - 1, a[1].q)],
            })
            .collect();
        check_distinct(&vertex_ids, &edges, &[])?;
        Ok(SideView {
            side,
            modulus,
            map: RotationMap::new(ascending(&signs, data.mirrored), &edges),
            vertex_ids,
            signs,
            edge_arcs: (0..edges.len()).collect(),
            arc_ids: data.arc_ids.clone(),
            stubs: Vec::new(),
            mirrored: data.mirrored,
        })
    }

    pub fn of_patch(patch: &WebPatch) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut edge_arcs = Vec::new();
        let mut stubs = Vec::new();
        for (k, a) in patch.arcs.iter().enumerate() {
            match *a {
                PatchArc::Edge(e) => {
                    edges.push(e);
                    edge_arcs.push(k);
                }
                PatchArc::Ghost { vertex, label } => stubs.push((vertex, label, k)),
            }
        }
        check_distinct(&patch.vertex_ids, &edges, &stubs)?;
        Ok(SideView {
            side: Side::Q,
            modulus: patch.p,
            map: RotationMap::new(ascending(&patch.signs, patch.mirrored), &edges),
            vertex_ids: patch.vertex_ids.clone(),
            signs: patch.signs.clone(),
            edge_arcs,
            arc_ids: patch.arc_ids.clone(),
            stubs,
            mirrored: patch.mirrored,
        })
    }

    pub fn of_source(source: Source<'_>, side: Side) -> Result<Self, GraphError> {
        match source {
            Source::Paired(d) => Self::of_paired(d, side),
            Source::Patch(p) if side == Side::Q => Self::of_patch(p),
            Source::Patch(_) => Err(GraphError::field("side", "patches only have a Q side")),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    /// Source arc id of the edge through dart `d`.
    pub fn dart_arc_id(&self, d: usize) -> &str {
        &self.arc_ids[self.edge_arcs[RotationMap::edge_of(d)]]
    }

    /// Faces of the map that hold at least one ghost stub.
    pub fn ghost_faces(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .stubs
            .iter()
            .map(|&(v, l, _)| self.map.locate(v, l))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn face(&self, index: usize) -> Face {
        let f = &self.map.faces()[index];
        let ghosts = self.ghost_faces();
        let corners = match f.isolated_vertex {
            Some(_) => vec![],
            None => f
                .darts
                .iter()
                .map(|&d| Corner {
                    vertex: self.vertex_ids[self.map.vertex_of(d)].clone(),
                    labels: self.map.corner_before(d),
                    edge: self.dart_arc_id(d).to_string(),
                })
                .collect(),
        };
        Face {
            index,
            side: self.side,
            length: f.len(),
            isolated_vertex: f.isolated_vertex.map(|v| self.vertex_ids[v].clone()),
            corners,
            holds_ghost: ghosts.contains(&index),
        }
    }

    pub fn faces(&self) -> Vec<Face> {
        (0..self.map.faces().len()).map(|f| self.face(f)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub vertex: String,
    /// Labels of the two ends bounding the corner, in rotation order.
    pub labels: (u32, u32),
    /// The edge leaving the corner.
    pub edge: String,
}

/// A traced complementary region: corners and edges alternate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub index: usize,
    pub side: Side,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated_vertex: Option<String>,
    pub corners: Vec<Corner>,
    /// The region contains a ghost stub, so it is not a face of the disk.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub holds_ghost: bool,
}

/// Faces of one side. Patches with ghost stubs are rejected; see
/// [`WebPatch::without_ghosts`].
pub fn trace_faces(source: Source<'_>, side: Side) -> Result<Vec<Face>, GraphError> {
    if let Source::Patch(p) = source {
        if p.ghosts().next().is_some() {
            return Err(GraphError::DanglingEnds);
        }
    }
    Ok(SideView::of_source(source, side)?.faces())
}

impl WebPatch {
    pub fn without_ghosts(&self) -> WebPatch {
        let keep: Vec<usize> = (0..self.arcs.len())
            .filter(|&k| matches!(self.arcs[k], PatchArc::Edge(_)))
            .collect();
        WebPatch {
            arcs: keep.iter().map(|&k| self.arcs[k]).collect(),
            arc_ids: keep.iter().map(|&k| self.arc_ids[k].clone()).collect(),
            ..self.clone()
        }
    }
}
