use serde::Serialize;

use super::gamma::GammaGraph;
use crate::error::WebError;
use crate::graph::Case;
use crate::map::RotationMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub index: usize,
    pub n1: usize,
    pub n2: usize,
    /// Q labels of the Γ-ends counted by `n1` and `n2`.
    pub labels1: Vec<u32>,
    pub labels2: Vec<u32>,
    /// Subregions making up a Scharlemann region.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subregions: Vec<usize>,
    /// Scharlemann region whose `u_{a+1}` labels equal this one's `u_a`
    /// labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift_to: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionData {
    pub anchor: (u32, u32),
    /// Length of the chosen Scharlemann cycle.
    pub l: usize,
    pub v: usize,
    pub valence_a: usize,
    pub subregions: Vec<Region>,
    pub scharlemann_regions: Vec<Region>,
    /// Common value of every `n_i(Δ_k)`, when they agree.
    pub n: Option<usize>,
}

impl RegionData {
    /// Region data from bare counts, for arithmetic checks.
    pub fn from_counts(anchor: (u32, u32), v: usize, n1: &[usize], n2: &[usize]) -> Self {
        let regions: Vec<Region> = n1
            .iter()
            .zip(n2)
            .enumerate()
            .map(|(k, (&a, &b))| Region {
                index: k,
                n1: a,
                n2: b,
                labels1: Vec::new(),
                labels2: Vec::new(),
                subregions: vec![k],
                shift_to: None,
            })
            .collect();
        let mut data = RegionData {
            anchor,
            l: n1.len(),
            v,
            valence_a: n1.len() + n1.iter().sum::<usize>(),
            subregions: regions.clone(),
            scharlemann_regions: regions,
            n: None,
        };
        data.n = common_n(&data.scharlemann_regions);
        data
    }
}

fn common_n(regions: &[Region]) -> Option<usize> {
    let first = regions.first()?.n1;
    regions
        .iter()
        .all(|r| r.n1 == first && r.n2 == first)
        .then_some(first)
}

/// Keys of Γ-ends at `v` strictly inside the corner that ends at the
/// sub-map dart with key `to` and starts at the one with key `from`.
fn inside_corner(full: &RotationMap, v: usize, from: u32, to: u32) -> Vec<u32> {
    let rot = full.rotation(v);
    let pos = |k: u32| {
        rot.iter()
            .position(|&d| full.key_of(d) == k)
            .expect("sub-map dart in full map")
    };
    let (i, j) = (pos(from), pos(to));
    let n = rot.len();
    let count = if i == j { n - 1 } else { (j + n - i - 1) % n };
    (1..=count).map(|s| full.key_of(rot[(i + s) % n])).collect()
}

/// Counts for each face of `sub` (isolated vertices skipped): ends of the
/// full map inside its corners at `a` and at `b`.
fn face_counts(
    full: &RotationMap,
    sub: &RotationMap,
    a: usize,
    b: usize,
) -> Result<Vec<Region>, WebError> {
    let mut out = Vec::new();
    for (fi, f) in sub.faces().iter().enumerate() {
        if f.isolated_vertex.is_some() {
            continue;
        }
        let mut region = Region {
            index: out.len(),
            n1: 0,
            n2: 0,
            labels1: Vec::new(),
            labels2: Vec::new(),
            subregions: Vec::new(),
            shift_to: None,
        };
        let (mut seen_a, mut seen_b) = (0, 0);
        for &d in &f.darts {
            let v = sub.vertex_of(d);
            let from = sub.key_of(sub.pred(d));
            let labels = inside_corner(full, v, from, sub.key_of(d));
            if v == a {
                seen_a += 1;
                region.labels1.extend(labels);
            } else if v == b {
                seen_b += 1;
                region.labels2.extend(labels);
            }
        }
        if seen_a != 1 || seen_b != 1 {
            return Err(WebError::Inconsistent(format!(
                "face {fi} of the anchor sub-map is not a bigon between u{} and u{}",
                a + 1,
                b + 1
            )));
        }
        region.labels1.sort_unstable();
        region.labels2.sort_unstable();
        region.n1 = region.labels1.len();
        region.n2 = region.labels2.len();
        out.push(region);
    }
    Ok(out)
}

/// Cuts the P sphere along `u_a`, `u_{a+1}` and the Γ-edges between them
/// into subregions, and along the chosen Scharlemann cycle alone into
/// Scharlemann regions.
pub fn decompose_regions(gamma: &GammaGraph, a: u32) -> Result<RegionData, WebError> {
    let b = crate::graph::label_succ(a, gamma.p);
    let cycle = gamma.cycle_on(a).ok_or(WebError::NoAnchorCycle(a, b))?;
    let (ua, ub) = (a as usize - 1, b as usize - 1);
    let e_edges: Vec<usize> = (0..gamma.edges.len())
        .filter(|&k| {
            let [(x, _), (y, _)] = gamma.edges[k].ends;
            (x == a && y == b) || (x == b && y == a)
        })
        .collect();
    let full = gamma.full_map();
    let e_map = gamma.map_of(&e_edges);
    let s_map = gamma.map_of(&cycle.edges);
    let mut subregions = face_counts(&full, &e_map, ua, ub)?;
    let mut regions = face_counts(&full, &s_map, ua, ub)?;

    // subregion containment via the corner at u_a
    let mut s_face_index = vec![usize::MAX; s_map.faces().len()];
    for (k, fi) in (0..s_map.faces().len())
        .filter(|&f| s_map.faces()[f].isolated_vertex.is_none())
        .enumerate()
    {
        s_face_index[fi] = k;
    }
    let mut j = 0;
    for f in e_map.faces() {
        if f.isolated_vertex.is_some() {
            continue;
        }
        let d = *f.darts.iter().find(|&&d| e_map.vertex_of(d) == ua).unwrap();
        let from = e_map.key_of(e_map.pred(d));
        let s_dart = s_map.dart_after(ua, from).expect("anchor cycle meets u_a");
        let k = s_face_index[s_map.face_of_dart(s_dart)];
        regions[k].subregions.push(j);
        subregions[j].index = j;
        j += 1;
    }

    // cyclic shift by Q label across the handle
    let mut used = vec![false; regions.len()];
    for k in 0..regions.len() {
        let target =
            (0..regions.len()).find(|&t| !used[t] && regions[t].labels2 == regions[k].labels1);
        if let Some(t) = target {
            used[t] = true;
            regions[k].shift_to = Some(t);
        }
    }
    let n = common_n(&regions);
    Ok(RegionData {
        anchor: (a, b),
        l: cycle.edges.len(),
        v: gamma.v,
        valence_a: gamma.valence[ua],
        subregions,
        scharlemann_regions: regions,
        n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub anchor: (u32, u32),
    pub l: u32,
    pub v: usize,
    pub n: Option<usize>,
    pub checks: Vec<CheckLine>,
    pub divides: bool,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn line(name: &str, ok: bool, detail: String) -> CheckLine {
    CheckLine {
        name: name.to_string(),
        ok,
        detail,
    }
}

/// Checks the region counts and concludes `l | v`.
pub fn verify_divisibility(region: &RegionData, v: usize, l: u32) -> DivisibilityReport {
    let mut checks = Vec::new();
    for d in &region.subregions {
        if d.n1 != d.n2 {
            checks.push(line(
                "subregion",
                false,
                format!("D{}: n1 = {} but n2 = {}", d.index + 1, d.n1, d.n2),
            ));
        }
    }
    let regions = &region.scharlemann_regions;
    if region.l != l as usize {
        checks.push(line(
            "cycle length",
            false,
            format!("Scharlemann cycle has length {}, expected {l}", region.l),
        ));
    }
    for r in regions {
        if r.n1 != r.n2 {
            checks.push(line(
                "scharlemann region",
                false,
                format!("Delta{}: n1 = {} but n2 = {}", r.index + 1, r.n1, r.n2),
            ));
        }
        if !r.subregions.is_empty() {
            let sum: usize = r.subregions.iter().map(|&j| region.subregions[j].n1).sum();
            let want = r.subregions.len() - 1 + sum;
            if want != r.n1 {
                checks.push(line(
                    "region sum",
                    false,
                    format!(
                        "Delta{}: n1 = {} but (m - 1) + sum n1(D) = {want}",
                        r.index + 1,
                        r.n1
                    ),
                ));
            }
        }
    }
    let labelled = regions
        .iter()
        .any(|r| !r.labels1.is_empty() || !r.labels2.is_empty());
    if labelled {
        for r in regions {
            match r.shift_to {
                Some(t) if regions[t].n2 == r.n1 => {}
                Some(t) => checks.push(line(
                    "cyclic shift",
                    false,
                    format!(
                        "n1(Delta{}) = {} but n2(Delta{}) = {}",
                        r.index + 1,
                        r.n1,
                        t + 1,
                        regions[t].n2
                    ),
                )),
                None => checks.push(line(
                    "cyclic shift",
                    false,
                    format!(
                        "no region carries the u{} labels {:?} of Delta{} at u{}",
                        region.anchor.0,
                        r.labels1,
                        r.index + 1,
                        region.anchor.1
                    ),
                )),
            }
        }
    }
    match region.n {
        Some(n) => {
            let ok = (1 + n) * l as usize == v;
            checks.push(line(
                "valence count",
                ok,
                format!("(1 + {n}) * {l} = {} vs v = {v}", (1 + n) * l as usize),
            ));
        }
        None => {
            let counts: Vec<(usize, usize)> = regions.iter().map(|r| (r.n1, r.n2)).collect();
            checks.push(line("valence count", false, format!("region counts {counts:?} are not all equal, so no n solves (1 + n) * {l} = {v}")));
        }
    }
    let divides = l > 0 && v.is_multiple_of(l as usize);
    checks.push(line(
        "divisibility",
        divides,
        format!(
            "{l} {} {v}",
            if divides {
                "divides"
            } else {
                "does not divide"
            }
        ),
    ));
    DivisibilityReport {
        anchor: region.anchor,
        l,
        v,
        n: region.n,
        checks,
        divides,
    }
}

/// Divisibility at every anchor of the case; with three summands the
/// product `l1 l2` must divide `v` as well.
pub fn web_divisibility(gamma: &GammaGraph) -> Result<Vec<DivisibilityReport>, WebError> {
    let mut out = Vec::new();
    for (a, l) in gamma.case.anchors() {
        let region = decompose_regions(gamma, a)?;
        out.push(verify_divisibility(&region, gamma.v, l));
    }
    if let Case::ThreeSummands { l1, l2, .. } = gamma.case {
        let r = (l1 * l2) as usize;
        if let Some(last) = out.last_mut() {
            let ok = gamma.v.is_multiple_of(r);
            last.checks.push(line(
                "product",
                ok,
                format!(
                    "l1 * l2 = {r} {} v = {}",
                    if ok { "divides" } else { "does not divide" },
                    gamma.v
                ),
            ));
        }
    }
    Ok(out)
}
