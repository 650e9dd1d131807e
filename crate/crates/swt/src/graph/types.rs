use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Which sphere a vertex of `G_P` lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PComponent {
    P1,
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Case {
    General {
        l: u32,
    },
    ThreeSummands {
        l1: u32,
        l2: u32,
        x: u32,
        p1: u32,
        p2: u32,
    },
}

impl Case {
    /// Number of ghosts a great web carries: `p - 2` or `p - 4`.
    pub fn ghost_count(&self, p: u32) -> u32 {
        match self {
            Case::General { .. } => p.saturating_sub(2),
            Case::ThreeSummands { .. } => p.saturating_sub(4),
        }
    }

    pub fn scharlemann_labels(&self) -> Vec<u32> {
        match *self {
            Case::General { .. } => vec![1, 2],
            Case::ThreeSummands { x, .. } => vec![1, 2, x, x + 1],
        }
    }

    pub fn is_scharlemann_label(&self, label: u32) -> bool {
        self.scharlemann_labels().contains(&label)
    }

    /// Regular labels `L`, ascending.
    pub fn regular_labels(&self, p: u32) -> Vec<u32> {
        (1..=p).filter(|&l| !self.is_scharlemann_label(l)).collect()
    }

    /// Anchor label pairs `(a, a+1)` with the Scharlemann length expected
    /// on each.
    pub fn anchors(&self) -> Vec<(u32, u32)> {
        match *self {
            Case::General { l } => vec![(1, l)],
            Case::ThreeSummands { l1, l2, x, .. } => vec![(1, l1), (x, l2)],
        }
    }

    /// Problems with the case data itself.
    pub fn problems(&self, p: u32) -> Vec<String> {
        let mut out = Vec::new();
        match *self {
            Case::General { l } => {
                if l < 2 {
                    out.push(format!("l = {l} must be at least 2"));
                }
            }
            Case::ThreeSummands { l1, l2, x, p1, p2 } => {
                if l1 < 2 || l2 < 2 {
                    out.push(format!("l1 = {l1}, l2 = {l2} must both be at least 2"));
                }
                if l1.gcd(&l2) != 1 {
                    out.push(format!("gcd(l1, l2) = {} must be 1", l1.gcd(&l2)));
                }
                if x < 4 || x + 2 > p {
                    out.push(format!(
                        "x = {x} must satisfy 4 <= x <= p - 2 = {}",
                        p as i64 - 2
                    ));
                }
                if p1 + p2 != p {
                    out.push(format!("p1 + p2 = {} must equal p = {p}", p1 + p2));
                }
            }
        }
        out
    }
}

/// Labels add mod `m` with representatives `1..=m`.
pub fn label_succ(label: u32, m: u32) -> u32 {
    if label >= m {
        1
    } else {
        label + 1
    }
}

/// `Some(a)` when `{x, y} = {a, a+1}` mod `m`.
pub fn consecutive_pair(x: u32, y: u32, m: u32) -> Option<u32> {
    if m >= 2 && label_succ(x, m) == y {
        Some(x)
    } else if m >= 2 && label_succ(y, m) == x {
        Some(y)
    } else {
        None
    }
}

/// An endpoint of an arc of Q ∩ P: `∂v_q ∩ ∂u_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    /// Q label, 1-based.
    pub q: u32,
    /// P label, 1-based.
    pub p: u32,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v{}, u{})", self.q, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Q,
    P,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Q => "Q",
            Side::P => "P",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(Side::Q),
            "P" | "p" => Ok(Side::P),
            _ => Err(format!("side must be Q or P, got {s:?}")),
        }
    }
}

/// The full arc set of Q ∩ P with vertex signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedIntersection {
    pub p: u32,
    pub q: u32,
    pub case: Case,
    /// Sign of `v_i` at index `i - 1`.
    pub q_signs: Vec<Sign>,
    /// Sign of `u_λ` at index `λ - 1`.
    pub p_signs: Vec<Sign>,
    /// Sphere of `u_λ`; all `P1` in the general case.
    pub p_components: Vec<PComponent>,
    pub arcs: Vec<[GridPoint; 2]>,
    pub arc_ids: Vec<String>,
    /// Reverse every rotation (the reflected orientation convention).
    pub mirrored: bool,
}

impl PairedIntersection {
    pub fn new(
        p: u32,
        q: u32,
        case: Case,
        q_signs: Vec<Sign>,
        p_signs: Vec<Sign>,
        p_components: Vec<PComponent>,
        arcs: Vec<[GridPoint; 2]>,
    ) -> Self {
        let arc_ids = (1..=arcs.len()).map(|k| format!("a{k}")).collect();
        PairedIntersection {
            p,
            q,
            case,
            q_signs,
            p_signs,
            p_components,
            arcs,
            arc_ids,
            mirrored: false,
        }
    }

    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        m.mirrored = !m.mirrored;
        m
    }

    pub fn q_sign(&self, i: u32) -> Sign {
        self.q_signs[i as usize - 1]
    }

    pub fn p_sign(&self, l: u32) -> Sign {
        self.p_signs[l as usize - 1]
    }

    pub fn p_component(&self, l: u32) -> PComponent {
        self.p_components[l as usize - 1]
    }
}

/// One arc of a web patch: a full edge, or a ghost stub whose far end
/// leaves the patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatchArc {
    /// `(vertex index, P label)` at both ends.
    Edge([(usize, u32); 2]),
    Ghost {
        vertex: usize,
        label: u32,
    },
}

/// A Q-side fragment: same-structure vertices and arcs, some dangling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebPatch {
    pub p: u32,
    pub case: Case,
    pub vertex_ids: Vec<String>,
    pub signs: Vec<Sign>,
    pub arcs: Vec<PatchArc>,
    pub arc_ids: Vec<String>,
    pub mirrored: bool,
}

impl WebPatch {
    pub fn new(p: u32, case: Case, signs: Vec<Sign>, arcs: Vec<PatchArc>) -> Self {
        let vertex_ids = (1..=signs.len()).map(|k| format!("v{k}")).collect();
        let mut arc_ids = Vec::with_capacity(arcs.len());
        let (mut a, mut g) = (0, 0);
        for arc in &arcs {
            match arc {
                PatchArc::Edge(_) => {
                    a += 1;
                    arc_ids.push(format!("a{a}"));
                }
                PatchArc::Ghost { .. } => {
                    g += 1;
                    arc_ids.push(format!("g{g}"));
                }
            }
        }
        WebPatch {
            p,
            case,
            vertex_ids,
            signs,
            arcs,
            arc_ids,
            mirrored: false,
        }
    }

    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        m.mirrored = !m.mirrored;
        m
    }

    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = [(usize, u32); 2]> + '_ {
        self.arcs.iter().filter_map(|a| match a {
            PatchArc::Edge(e) => Some(*e),
            PatchArc::Ghost { .. } => None,
        })
    }

    pub fn ghosts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.arcs.iter().filter_map(|a| match a {
            PatchArc::Ghost { vertex, label } => Some((*vertex, *label)),
            PatchArc::Edge(_) => None,
        })
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_arithmetic_wraps() {
        assert_eq!(label_succ(4, 4), 1);
        assert_eq!(consecutive_pair(4, 1, 4), Some(4));
        assert_eq!(consecutive_pair(2, 1, 4), Some(1));
        assert_eq!(consecutive_pair(1, 3, 4), None);
    }

    #[test]
    fn case_labels() {
        let c = Case::ThreeSummands {
            l1: 2,
            l2: 3,
            x: 4,
            p1: 2,
            p2: 4,
        };
        assert_eq!(c.regular_labels(6), vec![3, 6]);
        assert_eq!(c.ghost_count(6), 2);
        assert!(c.problems(6).is_empty());
        let bad = Case::ThreeSummands {
            l1: 2,
            l2: 4,
            x: 2,
            p1: 2,
            p2: 2,
        };
        assert_eq!(bad.problems(6).len(), 3);
        assert_eq!(Case::General { l: 2 }.regular_labels(4), vec![3, 4]);
        assert_eq!(Case::General { l: 2 }.ghost_count(12), 10);
    }
}
