use serde::Serialize;

use super::gamma::GammaGraph;
use crate::error::WebError;
use crate::graph::Case;

/// The counting identity `k1 l2 = k2 l1` for one pair of shared vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedIdentity {
    pub k1: u32,
    pub k2: u32,
    pub l1: u32,
    pub l2: u32,
    pub lhs: u32,
    pub rhs: u32,
    pub holds: bool,
}

pub fn shared_identity(k1: u32, k2: u32, l1: u32, l2: u32) -> SharedIdentity {
    let (lhs, rhs) = (k1 * l2, k2 * l1);
    SharedIdentity {
        k1,
        k2,
        l1,
        l2,
        lhs,
        rhs,
        holds: lhs == rhs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedPair {
    pub cycle1: Vec<String>,
    pub cycle2: Vec<String>,
    pub shared: Vec<String>,
    /// One entry per pair of shared vertices `(a, b)`, by Q label.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<((u32, u32), SharedIdentity)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedReport {
    pub pairs: Vec<SharedPair>,
    /// `compliant` when no two cycles share more than one vertex.
    pub verdict: &'static str,
}

impl SharedReport {
    pub fn is_compliant(&self) -> bool {
        self.verdict == "compliant"
    }
}

/// Number of entries of `labels` strictly between `a` and `b` going up
/// from `a` mod `q`.
fn strictly_between(labels: &[u32], a: u32, b: u32, q: u32) -> u32 {
    let up = |x: u32| (x + q - a) % q;
    labels
        .iter()
        .filter(|&&x| up(x) > 0 && up(x) < up(b))
        .count() as u32
}

/// Compares every Scharlemann cycle on `(1, 2)` with every one on
/// `(x, x+1)`.
pub fn shared_vertex_analysis(
    gamma: &GammaGraph,
    vertex_ids: &[String],
) -> Result<SharedReport, WebError> {
    let Case::ThreeSummands { l1, l2, x, .. } = gamma.case else {
        return Err(WebError::Inconsistent(
            "shared-vertex analysis needs the three-summand case".into(),
        ));
    };
    let ones: Vec<_> = gamma.cycles.iter().filter(|c| c.labels.0 == 1).collect();
    let xs: Vec<_> = gamma.cycles.iter().filter(|c| c.labels.0 == x).collect();
    if ones.is_empty() {
        return Err(WebError::NoAnchorCycle(1, 2));
    }
    if xs.is_empty() {
        return Err(WebError::NoAnchorCycle(x, x + 1));
    }
    let mut pairs = Vec::new();
    let mut compliant = true;
    for c1 in &ones {
        for c2 in &xs {
            let mut shared: Vec<usize> = c1
                .vertices
                .iter()
                .copied()
                .filter(|v| c2.vertices.contains(v))
                .collect();
            shared.sort_unstable();
            shared.dedup();
            let q1: Vec<u32> = c1.vertices.iter().map(|&v| gamma.web_q_labels[v]).collect();
            let q2: Vec<u32> = c2.vertices.iter().map(|&v| gamma.web_q_labels[v]).collect();
            let mut identities = Vec::new();
            if shared.len() >= 2 {
                compliant = false;
                for (i, &va) in shared.iter().enumerate() {
                    for &vb in &shared[i + 1..] {
                        let (a, b) = (gamma.web_q_labels[va], gamma.web_q_labels[vb]);
                        let k1 = strictly_between(&q1, a, b, gamma.q);
                        let k2 = strictly_between(&q2, a, b, gamma.q);
                        identities.push(((a, b), shared_identity(k1, k2, l1, l2)));
                    }
                }
            }
            let names = |vs: &[usize]| {
                vs.iter()
                    .map(|&v| vertex_ids[v].clone())
                    .collect::<Vec<_>>()
            };
            pairs.push(SharedPair {
                cycle1: names(&c1.vertices),
                cycle2: names(&c2.vertices),
                shared: names(&shared),
                identities,
            });
        }
    }
    Ok(SharedReport {
        pairs,
        verdict: if compliant { "compliant" } else { "violation" },
    })
}
