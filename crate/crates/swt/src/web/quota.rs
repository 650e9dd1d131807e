use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{scan_view, SideView, WebPatch};
use crate::map::RotationMap;

/// A run of parallel edges with no Scharlemann bigon among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quota {
    pub edges: Vec<String>,
    /// Bigon faces between consecutive edges.
    pub bigons: Vec<usize>,
}

/// A maximal chain of interior bigons between one vertex pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelFamily {
    pub edges: Vec<String>,
    /// `scharlemann[k]` tells whether the bigon between edges `k` and
    /// `k + 1` is a Scharlemann cycle.
    pub scharlemann: Vec<bool>,
    pub bigons: Vec<usize>,
    /// The chain closes up on itself.
    pub cyclic: bool,
    #[serde(skip)]
    pub edge_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotaReport {
    pub families: Vec<ParallelFamily>,
    pub quota: Option<Quota>,
    /// `small` when a full quota exists, `large` otherwise.
    pub classification: &'static str,
}

/// Interior bigon faces of a patch (faces holding ghosts excluded), as
/// `(face, [edge, edge], scharlemann)`.
pub fn interior_bigons(view: &SideView) -> Vec<(usize, [usize; 2], bool)> {
    let ghost = view.ghost_faces();
    let scharlemann: Vec<usize> = scan_view(view).into_iter().map(|(f, _)| f).collect();
    view.map
        .faces()
        .iter()
        .enumerate()
        .filter(|(fi, f)| f.len() == 2 && !ghost.contains(fi))
        .map(|(fi, f)| {
            let e = [
                RotationMap::edge_of(f.darts[0]),
                RotationMap::edge_of(f.darts[1]),
            ];
            (fi, e, scharlemann.contains(&fi))
        })
        .filter(|(_, e, _)| e[0] != e[1])
        .collect()
}

/// Families of parallel edges: each edge has at most two bigon sides, so
/// the bigon adjacency splits into paths and cycles.
pub fn parallel_families(view: &SideView) -> Vec<ParallelFamily> {
    let bigons = interior_bigons(view);
    let ne = view.map.edge_count();
    let mut links: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (k, (_, e, _)) in bigons.iter().enumerate() {
        links[e[0]].push(k);
        links[e[1]].push(k);
    }
    let other = |b: usize, e: usize| {
        let [x, y] = bigons[b].1;
        if x == e {
            y
        } else {
            x
        }
    };
    let mut seen = vec![false; ne];
    let mut out = Vec::new();
    // paths first from an end, then whatever is left is a cycle
    let starts: Vec<usize> = (0..ne)
        .filter(|&e| links[e].len() < 2)
        .chain((0..ne).filter(|&e| links[e].len() == 2))
        .collect();
    for s in starts {
        if seen[s] {
            continue;
        }
        let cyclic = links[s].len() == 2;
        let mut edges = vec![s];
        let mut via = Vec::new();
        seen[s] = true;
        let mut at = s;
        let mut came: Option<usize> = None;
        loop {
            let next = links[at].iter().copied().find(|&b| Some(b) != came);
            let Some(b) = next else { break };
            let e = other(b, at);
            if seen[e] {
                if cyclic {
                    via.push(b);
                }
                break;
            }
            via.push(b);
            seen[e] = true;
            edges.push(e);
            came = Some(b);
            at = e;
        }
        out.push(ParallelFamily {
            edges: edges
                .iter()
                .map(|&e| view.arc_ids[view.edge_arcs[e]].clone())
                .collect(),
            scharlemann: via.iter().map(|&b| bigons[b].2).collect(),
            bigons: via.iter().map(|&b| bigons[b].0).collect(),
            cyclic,
            edge_indices: edges,
        });
    }
    out
}

/// Looks for `p/2` parallel edges whose bigons are not Scharlemann cycles.
pub fn find_full_quota(patch: &WebPatch) -> Result<QuotaReport, GraphError> {
    let view = SideView::of_patch(patch)?;
    let families = parallel_families(&view);
    let need = (patch.p / 2) as usize;
    let mut quota = None;
    'search: for fam in &families {
        let len = fam.edges.len();
        if need > len {
            continue;
        }
        let starts = if fam.cyclic { len } else { len - need + 1 };
        for s in 0..starts {
            let idx: Vec<usize> = (s..s + need).map(|k| k % len).collect();
            let gaps: Vec<usize> = idx[..need.saturating_sub(1)].to_vec();
            if gaps.iter().all(|&k| !fam.scharlemann[k]) {
                quota = Some(Quota {
                    edges: idx.iter().map(|&k| fam.edges[k].clone()).collect(),
                    bigons: gaps.iter().map(|&k| fam.bigons[k]).collect(),
                });
                break 'search;
            }
        }
    }
    let classification = if quota.is_some() { "small" } else { "large" };
    Ok(QuotaReport {
        families,
        quota,
        classification,
    })
}
