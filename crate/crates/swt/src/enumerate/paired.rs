use std::collections::BTreeMap;

use serde::Serialize;

use super::partial::Partial;
use super::webs::closed_faces_ok;
use super::EnumError;
use crate::graph::{
    validate, Case, GridPoint, PComponent, PairedIntersection, Side, SideView, Sign,
};
use crate::web::{certify, GreatWeb};

/// A valid paired configuration with the great webs it contains.
#[derive(Debug, Clone)]
pub struct PairedConfig {
    pub data: PairedIntersection,
    pub webs: Vec<GreatWeb>,
}

/// Search effort and outcome of one paired enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairedStats {
    pub sign_patterns: usize,
    pub nodes: u64,
    pub leaves: u64,
    pub configurations: usize,
}

pub fn check_paired_params(p: u32, q: u32, case: Case) -> Result<(), EnumError> {
    if p < 2 || q < 2 || p % 2 == 1 || q % 2 == 1 {
        return Err(EnumError::Params(format!(
            "p = {p} and q = {q} must be even and at least 2"
        )));
    }
    if let Some(problem) = case.problems(p).into_iter().next() {
        return Err(EnumError::Params(problem));
    }
    Ok(())
}

/// All valid configurations up to cyclic relabeling of the vertices of
/// `G_Q`, in canonical order.
pub fn enumerate_paired(p: u32, q: u32, case: Case) -> Result<Vec<PairedConfig>, EnumError> {
    enumerate_paired_with_stats(p, q, case).map(|(c, _)| c)
}

pub fn enumerate_paired_with_stats(
    p: u32,
    q: u32,
    case: Case,
) -> Result<(Vec<PairedConfig>, PairedStats), EnumError> {
    check_paired_params(p, q, case)?;
    let comps = p_components(p, case);
    let mut stats = PairedStats::default();
    let mut found: BTreeMap<Key, PairedIntersection> = BTreeMap::new();
    for q_signs in q_sign_patterns(q) {
        for p_signs in p_sign_patterns(&comps) {
            stats.sign_patterns += 1;
            let mut s = PairedSearch::new(p, q, case, &q_signs, &p_signs, &comps);
            s.run();
            stats.nodes += s.nodes;
            stats.leaves += s.leaves.len() as u64;
            for arcs in s.leaves {
                let data = PairedIntersection::new(
                    p,
                    q,
                    case,
                    q_signs.clone(),
                    p_signs.clone(),
                    comps.clone(),
                    arcs,
                );
                let (key, shift) = canonical_key(&data);
                if found.contains_key(&key) || !validate(&data).is_valid() {
                    continue;
                }
                let data = relabel(&data, shift);
                found.insert(key, data);
            }
        }
    }
    let configs: Vec<PairedConfig> = found
        .into_values()
        .map(|data| {
            let webs = great_webs(&data);
            PairedConfig { data, webs }
        })
        .collect();
    stats.configurations = configs.len();
    Ok((configs, stats))
}

/// Sphere of every P vertex: `u1, u2` and the `p1 - 2` smallest other
/// labels outside `{x, x+1}` on `P1`.
fn p_components(p: u32, case: Case) -> Vec<PComponent> {
    match case {
        Case::General { .. } => vec![PComponent::P1; p as usize],
        Case::ThreeSummands { x, p1, .. } => {
            let mut comps = vec![PComponent::P2; p as usize];
            let mut left = p1 as usize;
            for l in [1, 2]
                .into_iter()
                .chain((3..=p).filter(|&l| l != x && l != x + 1))
            {
                if left == 0 {
                    break;
                }
                comps[l as usize - 1] = PComponent::P1;
                left -= 1;
            }
            comps
        }
    }
}

/// Sign patterns with `q/2` positive vertices, one per rotation class.
fn q_sign_patterns(q: u32) -> Vec<Vec<Sign>> {
    let n = q as usize;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize * 2 != n {
            continue;
        }
        let rotations = (1..n).map(|k| ((mask >> k) | (mask << (n - k))) & ((1 << n) - 1));
        if rotations.into_iter().any(|r| r < mask) {
            continue;
        }
        out.push(
            (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Sign::Pos
                    } else {
                        Sign::Neg
                    }
                })
                .collect(),
        );
    }
    out
}

/// Sign patterns with half of each sphere's vertices positive.
fn p_sign_patterns(comps: &[PComponent]) -> Vec<Vec<Sign>> {
    let n = comps.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let ok = [PComponent::P1, PComponent::P2].iter().all(|&c| {
            let total = comps.iter().filter(|&&x| x == c).count();
            let pos = (0..n)
                .filter(|&i| comps[i] == c && mask >> i & 1 == 1)
                .count();
            pos * 2 == total
        });
        if ok {
            out.push(
                (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

type Key = (Vec<Sign>, Vec<Sign>, Vec<[GridPoint; 2]>);

/// Least image under the `q` cyclic shifts of Q labels, with the shift
/// achieving it.
fn canonical_key(data: &PairedIntersection) -> (Key, u32) {
    (0..data.q)
        .map(|k| {
            let r = relabel(data, k);
            ((r.q_signs, r.p_signs, r.arcs), k)
        })
        .min()
        .unwrap()
}

/// `v_i` becomes `v_{i+k}`.
fn relabel(data: &PairedIntersection, k: u32) -> PairedIntersection {
    let q = data.q;
    let shift = |i: u32| (i - 1 + k) % q + 1;
    let mut q_signs = data.q_signs.clone();
    for i in 1..=q {
        q_signs[shift(i) as usize - 1] = data.q_sign(i);
    }
    let mut arcs: Vec<[GridPoint; 2]> = data
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
    PairedIntersection::new(
        data.p,
        q,
        data.case,
        q_signs,
        data.p_signs.clone(),
        data.p_components.clone(),
        arcs,
    )
}

/// Every same-sign vertex set of `G_Q` that certifies as a great web.
pub fn great_webs(data: &PairedIntersection) -> Vec<GreatWeb> {
    let Ok(view) = SideView::of_paired(data, Side::Q) else {
        return Vec::new();
    };
    let q = data.q as usize;
    let mut out = Vec::new();
    for mask in 1u32..1 << q {
        let members: Vec<usize> = (0..q).filter(|&i| mask >> i & 1 == 1).collect();
        if members
            .iter()
            .any(|&i| data.q_signs[i] != data.q_signs[members[0]])
        {
            continue;
        }
        if let Some(web) = certify(&view, data.p, data.case, &members).web {
            out.push(web);
        }
    }
    out
}

struct PairedSearch<'a> {
    p: usize,
    q: usize,
    q_signs: &'a [Sign],
    p_signs: &'a [Sign],
    comps: &'a [PComponent],
    /// Darts keyed by Q vertex: `i * p + λ`.
    qmap: Partial,
    /// Darts keyed by P vertex: `λ * q + i`.
    pmap: Partial,
    q_anchors: Vec<(u32, u32)>,
    nodes: u64,
    leaves: Vec<Vec<[GridPoint; 2]>>,
}

impl<'a> PairedSearch<'a> {
    fn new(
        p: u32,
        q: u32,
        case: Case,
        q_signs: &'a [Sign],
        p_signs: &'a [Sign],
        comps: &'a [PComponent],
    ) -> Self {
        let asc = |s: &[Sign]| s.iter().map(|&x| x == Sign::Pos).collect::<Vec<_>>();
        PairedSearch {
            p: p as usize,
            q: q as usize,
            q_signs,
            p_signs,
            comps,
            qmap: Partial::new(asc(q_signs), p),
            pmap: Partial::new(asc(p_signs), q),
            q_anchors: case.anchors(),
            nodes: 0,
            leaves: Vec::new(),
        }
    }

    /// `(i, λ)` of a Q dart, 0-based.
    fn split(&self, d: usize) -> (usize, usize) {
        (d / self.p, d % self.p)
    }

    fn pdart(&self, d: usize) -> usize {
        let (i, l) = self.split(d);
        l * self.q + i
    }

    fn run(&mut self) {
        self.nodes += 1;
        let qf = self.qmap.faces();
        let qc = self.qmap.components();
        let pf = self.pmap.faces();
        let pc = self.pmap.components();
        if self.qmap.monogon()
            || self.pmap.monogon()
            || !closed_faces_ok(&self.qmap, &qf, &self.q_anchors)
            || !closed_faces_ok(&self.pmap, &pf, &[])
        {
            return;
        }
        // branch on the open end with the fewest partners
        let n = self.p * self.q;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for d in 0..n {
            if !self.qmap.is_open(d) {
                continue;
            }
            let opts: Vec<usize> = (0..n)
                .filter(|&e| {
                    e != d && self.qmap.is_open(e) && self.allowed(d, e, &qf, &qc, &pf, &pc)
                })
                .collect();
            if opts.is_empty() {
                return;
            }
            if best.as_ref().is_none_or(|b| opts.len() < b.1.len()) {
                best = Some((d, opts));
            }
        }
        let Some((d, opts)) = best else {
            self.leaves.push(self.arcs());
            return;
        };
        let pd = self.pdart(d);
        for e in opts {
            let pe = self.pdart(e);
            self.qmap.join(d, e);
            self.pmap.join(pd, pe);
            self.run();
            self.qmap.unjoin(d, e);
            self.pmap.unjoin(pd, pe);
        }
    }

    /// Whether open ends `d` and `e` may form an arc now.
    fn allowed(
        &self,
        d: usize,
        e: usize,
        qf: &[usize],
        qc: &[usize],
        pf: &[usize],
        pc: &[usize],
    ) -> bool {
        let ((i, l), (j, m)) = (self.split(d), self.split(e));
        if self.comps[l] != self.comps[m] {
            return false;
        }
        let q_pos = self.q_signs[i] == self.q_signs[j];
        let p_pos = self.p_signs[l] == self.p_signs[m];
        if q_pos == p_pos {
            return false;
        }
        // neighbours in a rotation would bound a monogon
        let adjacent = |a: usize, b: usize, k: usize| (a + 1) % k == b || (b + 1) % k == a;
        if (i == j && adjacent(l, m, self.p)) || (l == m && adjacent(i, j, self.q)) {
            return false;
        }
        if qc[i] == qc[j] && qf[d] != qf[e] {
            return false;
        }
        let (pd, pe) = (self.pdart(d), self.pdart(e));
        !(pc[l] == pc[m] && pf[pd] != pf[pe])
    }

    fn arcs(&self) -> Vec<[GridPoint; 2]> {
        let g = |d: usize| {
            let (i, l) = (d / self.p, d % self.p);
            GridPoint {
                q: i as u32 + 1,
                p: l as u32 + 1,
            }
        };
        (0..self.p * self.q)
            .filter_map(|d| {
                let e = self.qmap.partner(d)?;
                (e > d).then(|| [g(d), g(e)])
            })
            .collect()
    }
}
