use std::collections::HashMap;

use serde::Serialize;

use super::side::{SideView, Source};
use super::types::Side;
use crate::error::GraphError;
use crate::map::RotationMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaPath {
    /// The path closed up: a λ-edged cycle through `vertices`.
    GreatCycle {
        vertices: Vec<String>,
        arcs: Vec<String>,
        steps: usize,
        /// The cycle bounds a single traced face, i.e. it is a great
        /// λ-cycle with empty interior.
        bounds_face: Option<usize>,
    },
    GhostHit {
        vertex: String,
        label: u32,
        steps: usize,
    },
}

impl LambdaPath {
    pub fn steps(&self) -> usize {
        match self {
            LambdaPath::GreatCycle { steps, .. } | LambdaPath::GhostHit { steps, .. } => *steps,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, LambdaPath::GreatCycle { .. })
    }
}

enum EndKind {
    Dart(usize),
    Ghost,
}

/// From `start`, repeatedly leave along the end labeled `label` until a
/// vertex repeats or a `label`-ghost is reached.
pub fn trace_lambda_path_in(
    view: &SideView,
    label: u32,
    start: usize,
) -> Result<LambdaPath, GraphError> {
    let mut ends: HashMap<(usize, u32), EndKind> = HashMap::new();
    for d in 0..view.map.edge_count() * 2 {
        ends.insert(
            (view.map.vertex_of(d), view.map.key_of(d)),
            EndKind::Dart(d),
        );
    }
    for &(v, l, _) in &view.stubs {
        ends.insert((v, l), EndKind::Ghost);
    }
    let sign = view.signs[start];
    let mut order: Vec<usize> = vec![start];
    let mut darts: Vec<usize> = Vec::new();
    let mut at = start;
    loop {
        match ends.get(&(at, label)) {
            None => {
                return Err(GraphError::MissingEnd {
                    vertex: view.vertex_ids[at].clone(),
                    label,
                })
            }
            Some(EndKind::Ghost) => {
                return Ok(LambdaPath::GhostHit {
                    vertex: view.vertex_ids[at].clone(),
                    label,
                    steps: darts.len(),
                })
            }
            Some(&EndKind::Dart(d)) => {
                darts.push(d);
                at = view.map.vertex_of(RotationMap::partner(d));
                if view.signs[at] != sign {
                    return Err(GraphError::SignChange(view.vertex_ids[at].clone()));
                }
                if let Some(k) = order.iter().position(|&v| v == at) {
                    let cycle_darts = &darts[k..];
                    let mut edges: Vec<usize> = cycle_darts
                        .iter()
                        .map(|&d| RotationMap::edge_of(d))
                        .collect();
                    edges.sort_unstable();
                    let ghost = view.ghost_faces();
                    let bounds_face = (0..view.map.faces().len()).find(|&f| {
                        if ghost.contains(&f) {
                            return false;
                        }
                        let mut fe: Vec<usize> = view.map.faces()[f]
                            .darts
                            .iter()
                            .map(|&d| RotationMap::edge_of(d))
                            .collect();
                        fe.sort_unstable();
                        fe == edges
                    });
                    return Ok(LambdaPath::GreatCycle {
                        vertices: order[k..]
                            .iter()
                            .map(|&v| view.vertex_ids[v].clone())
                            .collect(),
                        arcs: cycle_darts
                            .iter()
                            .map(|&d| view.dart_arc_id(d).to_string())
                            .collect(),
                        steps: darts.len(),
                        bounds_face,
                    });
                }
                order.push(at);
            }
        }
    }
}

pub fn trace_lambda_path(
    source: Source<'_>,
    label: u32,
    start: &str,
) -> Result<LambdaPath, GraphError> {
    let view = SideView::of_source(source, Side::Q)?;
    let v = view
        .vertex_ids
        .iter()
        .position(|id| id == start)
        .ok_or_else(|| GraphError::UnknownVertex(start.to_string()))?;
    trace_lambda_path_in(&view, label, v)
}
