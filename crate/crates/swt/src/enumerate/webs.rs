use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::partial::Partial;
use super::EnumError;
use crate::graph::{scan_view, Case, PatchArc, SideView, Sign, WebPatch};

/// How ghosts may be placed on generated patches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GhostRule {
    /// Exactly one ghost per regular label.
    #[default]
    Ledger,
    /// At most one ghost per regular label, none at Scharlemann labels.
    Relaxed,
}

/// Scharlemann cycles of the patch sit only on anchor pairs, with the
/// anchor's length.
pub fn case_consistent(patch: &WebPatch) -> bool {
    let Ok(view) = SideView::of_patch(patch) else {
        return false;
    };
    let anchors = patch.case.anchors();
    scan_view(&view).iter().all(|&(face, a)| {
        let len = view.map.faces()[face].len();
        anchors.iter().any(|&(b, l)| a == b && len == l as usize)
    })
}

/// Lexicographically least arc list over all vertex renumberings.
pub fn canonical_arcs(v: usize, arcs: &[PatchArc]) -> Vec<PatchArc> {
    let mut perm: Vec<usize> = (0..v).collect();
    let mut best: Option<Vec<PatchArc>> = None;
    loop {
        let mut mapped: Vec<PatchArc> = arcs
            .iter()
            .map(|a| match *a {
                PatchArc::Edge([x, y]) => {
                    let (x, y) = ((perm[x.0], x.1), (perm[y.0], y.1));
                    PatchArc::Edge(if x <= y { [x, y] } else { [y, x] })
                }
                PatchArc::Ghost { vertex, label } => PatchArc::Ghost {
                    vertex: perm[vertex],
                    label,
                },
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn next_perm(xs: &mut [usize]) -> bool {
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

pub fn check_web_params(v: usize, p: u32, case: Case) -> Result<(), EnumError> {
    if v == 0 {
        return Err(EnumError::Params("v must be at least 1".into()));
    }
    if p < 4 || p % 2 == 1 {
        return Err(EnumError::Params(format!(
            "p = {p} must be even and at least 4"
        )));
    }
    if let Some(problem) = case.problems(p).into_iter().next() {
        return Err(EnumError::Params(problem));
    }
    Ok(())
}

/// All web patches on `v` positive vertices up to vertex renumbering, in
/// canonical order.
pub fn enumerate_webs(
    v: usize,
    p: u32,
    case: Case,
    rule: GhostRule,
) -> Result<Vec<WebPatch>, EnumError> {
    check_web_params(v, p, case)?;
    let regular: Vec<bool> = (1..=p).map(|l| !case.is_scharlemann_label(l)).collect();
    let mut search = WebSearch {
        partial: Partial::new(vec![true; v], p),
        regular,
        rule,
        ghost_at: vec![false; p as usize],
        found: BTreeSet::new(),
        v,
        anchors: case.anchors(),
    };
    search.run();
    Ok(search
        .found
        .into_iter()
        .map(|arcs| WebPatch::new(p, case, vec![Sign::Pos; v], arcs))
        .filter(case_consistent)
        .collect())
}

struct WebSearch {
    partial: Partial,
    regular: Vec<bool>,
    rule: GhostRule,
    ghost_at: Vec<bool>,
    found: BTreeSet<Vec<PatchArc>>,
    v: usize,
    anchors: Vec<(u32, u32)>,
}

/// Finished faces that are Scharlemann cycles sit on an anchor pair with
/// the anchor's length.
pub(crate) fn closed_faces_ok(partial: &Partial, faces: &[usize], anchors: &[(u32, u32)]) -> bool {
    partial
        .closed_faces(faces)
        .iter()
        .all(|&(len, pair)| match pair {
            None => true,
            Some(a) => anchors.iter().any(|&(b, l)| a == b && len == l as usize),
        })
}

impl WebSearch {
    fn label(&self, d: usize) -> usize {
        d % self.partial.p as usize
    }

    fn run(&mut self) {
        let faces = self.partial.faces();
        let comps = self.partial.components();
        if !self.partial.ghosts_cofacial(&faces, &comps)
            || self.partial.monogon()
            || self.partial.stranded(&comps)
            || !closed_faces_ok(&self.partial, &faces, &self.anchors)
        {
            return;
        }
        let Some(d) = self.partial.first_open() else {
            self.leaf();
            return;
        };
        if !self.ledger_feasible(d) {
            return;
        }
        let l = self.label(d);
        if self.regular[l] && !self.ghost_at[l] {
            self.partial.set_ghost(d);
            self.ghost_at[l] = true;
            self.run();
            self.ghost_at[l] = false;
            self.partial.reopen(d);
        }
        // untouched vertices are interchangeable: only the first is tried
        let vd = self.partial.vertex(d);
        let fresh = (0..self.v).find(|&w| w != vd && self.partial.untouched(w));
        for e in d + 1..self.partial.darts() {
            if !self.partial.is_open(e) || self.label(e) == l {
                continue;
            }
            let (vd, ve) = (self.partial.vertex(d), self.partial.vertex(e));
            if ve != vd && self.partial.untouched(ve) && Some(ve) != fresh {
                continue;
            }
            if comps[vd] == comps[ve] && faces[d] != faces[e] {
                continue;
            }
            self.partial.join(d, e);
            self.run();
            self.partial.unjoin(d, e);
        }
    }

    /// Every regular label still owed a ghost has an open end left.
    fn ledger_feasible(&self, from: usize) -> bool {
        if self.rule == GhostRule::Relaxed {
            return true;
        }
        (0..self.partial.p as usize).all(|l| {
            !self.regular[l]
                || self.ghost_at[l]
                || (from..self.partial.darts())
                    .any(|e| self.label(e) == l && self.partial.is_open(e))
        })
    }

    fn leaf(&mut self) {
        if self.rule == GhostRule::Ledger
            && (0..self.regular.len()).any(|l| self.regular[l] && !self.ghost_at[l])
        {
            return;
        }
        if self.partial.components().iter().any(|&c| c != 0) {
            return;
        }
        let arcs = self.partial.patch_arcs();
        self.found.insert(canonical_arcs(self.v, &arcs));
    }
}
