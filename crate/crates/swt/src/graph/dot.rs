use std::collections::BTreeSet;
use std::fmt::Write;

use super::scharlemann::scharlemann_in_view;
use super::side::{SideView, Source};
use super::types::Side;
use crate::error::GraphError;
use crate::map::RotationMap;

/// Graphviz text for one side: a node per vertex, an edge per arc, and a
/// point node plus dashed edge (on one line) per ghost stub. Scharlemann
/// cycle edges are drawn bold red.
pub fn export_dot(source: Source<'_>, side: Side) -> Result<String, GraphError> {
    let view = SideView::of_source(source, side)?;
    let (case, comps) = match source {
        Source::Paired(d) => (d.case, Some(d.p_components.as_slice())),
        Source::Patch(p) => (p.case, None),
    };
    let hot: BTreeSet<usize> = scharlemann_in_view(&view, case, comps)
        .iter()
        .flat_map(|c| c.arc_indices.clone())
        .collect();
    let mut out = String::new();
    writeln!(out, "graph G_{side} {{").unwrap();
    for (id, sign) in view.vertex_ids.iter().zip(&view.signs) {
        writeln!(out, "  \"{id}\" [label=\"{id} ({sign})\"];").unwrap();
    }
    for e in 0..view.map.edge_count() {
        let (d0, d1) = (2 * e, 2 * e + 1);
        let arc = view.edge_arcs[e];
        let style = if hot.contains(&arc) {
            ", color=red, penwidth=2"
        } else {
            ""
        };
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [id=\"{}\", label=\"{}-{}\"{style}];",
            view.vertex_ids[view.map.vertex_of(d0)],
            view.vertex_ids[view.map.vertex_of(d1)],
            view.arc_ids[arc],
            view.map.key_of(d0),
            view.map.key_of(d1),
        )
        .unwrap();
        debug_assert_eq!(RotationMap::edge_of(d1), e);
    }
    for &(v, label, arc) in &view.stubs {
        let vid = &view.vertex_ids[v];
        let node = format!("ghost_{vid}_{label}");
        writeln!(
            out,
            "  \"{node}\" [shape=point, label=\"\"]; \"{vid}\" -- \"{node}\" [id=\"{}\", label=\"{label}\", style=dashed];",
            view.arc_ids[arc]
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
