use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::scharlemann::scharlemann_in_view;
use super::side::SideView;
use super::types::{Case, GridPoint, PComponent, PairedIntersection, Side, Sign};
use crate::map::ComponentEuler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Case,
    Grid,
    SignCensus,
    Rotation,
    Sphere,
    Genus,
    Parity,
    Monogon,
    Scharlemann,
    PScharlemann,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Case => "case",
            Check::Grid => "grid",
            Check::SignCensus => "sign census",
            Check::Rotation => "rotation",
            Check::Sphere => "sphere",
            Check::Genus => "genus",
            Check::Parity => "parity",
            Check::Monogon => "monogon",
            Check::Scharlemann => "scharlemann",
            Check::PScharlemann => "P-side scharlemann",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violation at {}: {}",
            self.check, self.location, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// V, E, F per connected component of `G_Q` when rotations derive.
    pub q_euler: Vec<ComponentEuler>,
    pub p_euler: Vec<ComponentEuler>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, check: Check) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    fn push(&mut self, check: Check, location: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            check,
            location: location.into(),
            message: message.into(),
        });
    }
}

/// Runs every admissibility check and lists all violations.
pub fn validate(data: &PairedIntersection) -> ValidationReport {
    let mut r = ValidationReport::default();
    for problem in data.case.problems(data.p) {
        r.push(Check::Case, "case", problem);
    }

    // grid completeness
    let mut users: BTreeMap<GridPoint, Vec<&str>> = BTreeMap::new();
    for (a, id) in data.arcs.iter().zip(&data.arc_ids) {
        for g in a {
            users.entry(*g).or_default().push(id);
        }
    }
    for i in 1..=data.q {
        for l in 1..=data.p {
            let g = GridPoint { q: i, p: l };
            match users.get(&g).map_or(0, |u| u.len()) {
                1 => {}
                0 => r.push(
                    Check::Grid,
                    g.to_string(),
                    "grid point is an endpoint of no arc",
                ),
                n => r.push(
                    Check::Grid,
                    g.to_string(),
                    format!(
                        "grid point is an endpoint of {n} arcs ({})",
                        users[&g].join(", ")
                    ),
                ),
            }
        }
    }

    // sign census
    let positive = data.q_signs.iter().filter(|&&s| s == Sign::Pos).count();
    if data.q % 2 == 1 || positive * 2 != data.q as usize {
        r.push(
            Check::SignCensus,
            "q_vertices",
            format!(
                "{positive} of {} vertices of G_Q are positive, expected q/2",
                data.q
            ),
        );
    }

    // rotations
    let q_view = SideView::of_paired(data, Side::Q);
    let p_view = SideView::of_paired(data, Side::P);
    let (q_view, p_view) = match (q_view, p_view) {
        (Ok(q), Ok(p)) => (q, p),
        (q, p) => {
            for e in [q.err(), p.err()].into_iter().flatten() {
                r.push(Check::Rotation, "rotation", e.to_string());
            }
            return r;
        }
    };
    for (view, expected) in [(&q_view, data.p), (&p_view, data.q)] {
        for v in 0..view.vertex_count() {
            let k = view.map.rotation(v).len();
            if k != expected as usize {
                r.push(
                    Check::Rotation,
                    view.vertex_ids[v].clone(),
                    format!("rotation has {k} ends, expected {expected}"),
                );
            }
        }
    }

    // sphere membership of P vertices and arcs
    if let Case::ThreeSummands { x, p1, .. } = data.case {
        for l in [1, 2, x, x + 1] {
            let want = if l <= 2 {
                PComponent::P1
            } else {
                PComponent::P2
            };
            if l <= data.p && data.p_component(l) != want {
                r.push(
                    Check::Sphere,
                    format!("u{l}"),
                    format!("expected on {want:?}"),
                );
            }
        }
        let n1 = data
            .p_components
            .iter()
            .filter(|&&c| c == PComponent::P1)
            .count();
        if n1 != p1 as usize {
            r.push(
                Check::Sphere,
                "p_vertices",
                format!("{n1} vertices on P1, expected p1 = {p1}"),
            );
        }
        for (a, id) in data.arcs.iter().zip(&data.arc_ids) {
            if data.p_component(a[0].p) != data.p_component(a[1].p) {
                r.push(Check::Sphere, id.clone(), "arc joins P1 to P2");
            }
        }
    }

    // Euler characteristic 2 on every component
    r.q_euler = q_view.map.euler_by_component();
    r.p_euler = p_view.map.euler_by_component();
    for (side, eul) in [(Side::Q, &r.q_euler.clone()), (Side::P, &r.p_euler.clone())] {
        for (c, e) in eul.iter().enumerate() {
            if e.chi() != 2 {
                r.push(
                    Check::Genus,
                    format!("G_{side} component {c}"),
                    format!(
                        "genus violation: V - E + F = {} - {} + {} = {}",
                        e.vertices,
                        e.edges,
                        e.faces,
                        e.chi()
                    ),
                );
            }
        }
    }

    // parity rule
    for (a, id) in data.arcs.iter().zip(&data.arc_ids) {
        let q_pos = data.q_sign(a[0].q) == data.q_sign(a[1].q);
        let p_pos = data.p_sign(a[0].p) == data.p_sign(a[1].p);
        if q_pos == p_pos {
            let kind = if q_pos { "positive" } else { "negative" };
            r.push(
                Check::Parity,
                id.clone(),
                format!("arc is {kind} on both G_Q and G_P"),
            );
        }
    }

    // no monogons
    for view in [&q_view, &p_view] {
        for (fi, f) in view.map.faces().iter().enumerate() {
            if f.len() == 1 {
                r.push(
                    Check::Monogon,
                    format!("G_{} face {fi}", view.side),
                    format!("monogon on {}", view.dart_arc_id(f.darts[0])),
                );
            }
        }
    }

    check_scharlemann(data, &q_view, &p_view, &mut r);
    r
}

fn check_scharlemann(
    data: &PairedIntersection,
    q_view: &SideView,
    p_view: &SideView,
    r: &mut ValidationReport,
) {
    let cycles = scharlemann_in_view(q_view, data.case, Some(&data.p_components));
    let mut pair_on: BTreeMap<PComponent, u32> = BTreeMap::new();
    for c in &cycles {
        let loc = format!("G_Q face {}", c.face);
        let (a, b) = c.labels;
        match data.case {
            Case::General { .. } => {
                if a != 1 {
                    r.push(
                        Check::Scharlemann,
                        loc.clone(),
                        format!("cycle on ({a}, {b}), expected (1, 2)"),
                    );
                }
            }
            Case::ThreeSummands { x, .. } => {
                let Some(comp) = c.component else {
                    r.push(
                        Check::Scharlemann,
                        loc,
                        format!("cycle on ({a}, {b}) contains edges of both G_1 and G_2"),
                    );
                    continue;
                };
                let pinned = if comp == PComponent::P1 { 1 } else { x };
                if *pair_on.entry(comp).or_insert(a) != a || a != pinned {
                    r.push(
                        Check::Scharlemann,
                        loc.clone(),
                        format!("cycle on ({a}, {b}) of {comp:?}; cycles there must all be on ({pinned}, {})", pinned + 1),
                    );
                }
            }
        }
        if c.length_ok() == Some(false) {
            r.push(
                Check::Scharlemann,
                loc,
                format!(
                    "cycle on ({a}, {b}) has length {}, expected {}",
                    c.length,
                    c.expected_length.unwrap()
                ),
            );
        }
    }
    for c in scharlemann_in_view(p_view, data.case, None) {
        r.push(
            Check::PScharlemann,
            format!("G_P face {}", c.face),
            format!(
                "Scharlemann cycle on ({}, {}) in G_P",
                c.labels.0, c.labels.1
            ),
        );
    }
}
