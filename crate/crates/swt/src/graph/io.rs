//! JSON documents for paired configurations and web patches.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::types::{Case, GridPoint, PComponent, PairedIntersection, PatchArc, Sign, WebPatch};
use crate::error::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QVertexDoc {
    pub id: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PVertexDoc {
    pub id: String,
    pub sign: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<PComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndDoc {
    pub q: String,
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostDoc {
    pub vertex: String,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub ends: Vec<EndDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghost: Option<GhostDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub case: Case,
    pub q_vertices: Vec<QVertexDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_vertices: Vec<PVertexDoc>,
    pub arcs: Vec<ArcDoc>,
}

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Paired(PairedIntersection),
    Patch(WebPatch),
}

fn numbered(id: &str, prefix: char, field: &str) -> Result<u32, GraphError> {
    id.strip_prefix(prefix)
        .and_then(|rest| rest.parse::<u32>().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| {
            GraphError::field(
                field,
                format!("expected `{prefix}<k>` with k >= 1, got {id:?}"),
            )
        })
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." {
                json_field(e.inner())
            } else {
                path
            };
            GraphError::field(field, e.inner().to_string())
        })?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GraphError::field("file", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    fn is_patch(&self) -> bool {
        self.q.is_none()
            || self.p_vertices.is_empty()
            || self.arcs.iter().any(|a| a.ghost.is_some())
    }

    pub fn into_document(self) -> Result<Document, GraphError> {
        if self.is_patch() {
            self.into_patch().map(Document::Patch)
        } else {
            self.into_paired().map(Document::Paired)
        }
    }

    pub fn into_paired(self) -> Result<PairedIntersection, GraphError> {
        let p = self.p;
        let q = self.q.ok_or_else(|| GraphError::field("q", "missing"))?;
        if p < 2 {
            return Err(GraphError::field(
                "p",
                format!("p = {p} must be at least 2"),
            ));
        }
        if q < 2 {
            return Err(GraphError::field(
                "q",
                format!("q = {q} must be at least 2"),
            ));
        }
        let mut q_signs = vec![None; q as usize];
        for (k, v) in self.q_vertices.iter().enumerate() {
            let field = format!("q_vertices[{k}].id");
            let i = numbered(&v.id, 'v', &field)?;
            let slot = q_signs
                .get_mut(i as usize - 1)
                .ok_or_else(|| GraphError::field(&field, format!("{} exceeds q = {q}", v.id)))?;
            if slot.replace(v.sign).is_some() {
                return Err(GraphError::field(
                    field,
                    format!("duplicate vertex {}", v.id),
                ));
            }
        }
        let q_signs = collect_all(q_signs, "q_vertices", 'v')?;
        let mut p_signs = vec![None; p as usize];
        let mut p_components = vec![PComponent::P1; p as usize];
        for (k, u) in self.p_vertices.iter().enumerate() {
            let field = format!("p_vertices[{k}].id");
            let l = numbered(&u.id, 'u', &field)?;
            let slot = p_signs
                .get_mut(l as usize - 1)
                .ok_or_else(|| GraphError::field(&field, format!("{} exceeds p = {p}", u.id)))?;
            if slot.replace(u.sign).is_some() {
                return Err(GraphError::field(
                    field,
                    format!("duplicate vertex {}", u.id),
                ));
            }
            match (self.case, u.component) {
                (Case::ThreeSummands { .. }, None) => {
                    return Err(GraphError::field(
                        format!("p_vertices[{k}].component"),
                        "required in the three-summand case",
                    ))
                }
                (_, Some(c)) => p_components[l as usize - 1] = c,
                _ => {}
            }
        }
        let p_signs = collect_all(p_signs, "p_vertices", 'u')?;
        let mut arcs = Vec::with_capacity(self.arcs.len());
        let mut arc_ids = Vec::with_capacity(self.arcs.len());
        for (k, a) in self.arcs.iter().enumerate() {
            if a.ghost.is_some() {
                return Err(GraphError::field(
                    format!("arcs[{k}].ghost"),
                    "ghosts only occur in patches",
                ));
            }
            if a.ends.len() != 2 {
                return Err(GraphError::field(
                    format!("arcs[{k}].ends"),
                    format!("expected 2 endpoints, found {}", a.ends.len()),
                ));
            }
            let mut pts = [GridPoint { q: 0, p: 0 }; 2];
            for (j, end) in a.ends.iter().enumerate() {
                let qi = numbered(&end.q, 'v', &format!("arcs[{k}].ends[{j}].q"))?;
                let pl = numbered(&end.p, 'u', &format!("arcs[{k}].ends[{j}].p"))?;
                if qi > q {
                    return Err(GraphError::field(
                        format!("arcs[{k}].ends[{j}].q"),
                        format!("{} exceeds q = {q}", end.q),
                    ));
                }
                if pl > p {
                    return Err(GraphError::field(
                        format!("arcs[{k}].ends[{j}].p"),
                        format!("{} exceeds p = {p}", end.p),
                    ));
                }
                pts[j] = GridPoint { q: qi, p: pl };
            }
            arcs.push(pts);
            arc_ids.push(a.id.clone().unwrap_or_else(|| format!("a{}", k + 1)));
        }
        let mut data =
            PairedIntersection::new(p, q, self.case, q_signs, p_signs, p_components, arcs);
        data.arc_ids = arc_ids;
        Ok(data)
    }

    pub fn into_patch(self) -> Result<WebPatch, GraphError> {
        let p = self.p;
        let ids: Vec<String> = self.q_vertices.iter().map(|v| v.id.clone()).collect();
        for (k, id) in ids.iter().enumerate() {
            if ids[..k].contains(id) {
                return Err(GraphError::field(
                    format!("q_vertices[{k}].id"),
                    format!("duplicate vertex {id}"),
                ));
            }
        }
        let index = |id: &str, field: String| {
            ids.iter()
                .position(|v| v == id)
                .ok_or_else(|| GraphError::field(field, format!("unknown vertex {id:?}")))
        };
        let label = |id: &str, field: String| {
            let l = numbered(id, 'u', &field)?;
            if l > p {
                return Err(GraphError::field(field, format!("{id} exceeds p = {p}")));
            }
            Ok(l)
        };
        let mut arcs = Vec::new();
        let mut arc_ids = Vec::new();
        let (mut na, mut ng) = (0, 0);
        for (k, a) in self.arcs.iter().enumerate() {
            match (&a.ghost, a.ends.len()) {
                (None, 2) => {
                    let mut ends = [(0usize, 0u32); 2];
                    for (j, end) in a.ends.iter().enumerate() {
                        ends[j] = (
                            index(&end.q, format!("arcs[{k}].ends[{j}].q"))?,
                            label(&end.p, format!("arcs[{k}].ends[{j}].p"))?,
                        );
                    }
                    arcs.push(PatchArc::Edge(ends));
                    na += 1;
                    arc_ids.push(a.id.clone().unwrap_or_else(|| format!("a{na}")));
                }
                (Some(g), 1) => {
                    let end = &a.ends[0];
                    let vertex = index(&end.q, format!("arcs[{k}].ends[0].q"))?;
                    let l = label(&end.p, format!("arcs[{k}].ends[0].p"))?;
                    if g.vertex != end.q || g.label != l {
                        return Err(GraphError::field(
                            format!("arcs[{k}].ghost"),
                            format!(
                                "ghost ({}, {}) disagrees with endpoint ({}, {})",
                                g.vertex, g.label, end.q, end.p
                            ),
                        ));
                    }
                    arcs.push(PatchArc::Ghost { vertex, label: l });
                    ng += 1;
                    arc_ids.push(a.id.clone().unwrap_or_else(|| format!("g{ng}")));
                }
                (Some(_), n) => {
                    return Err(GraphError::field(
                        format!("arcs[{k}].ends"),
                        format!("a ghost arc has 1 endpoint, found {n}"),
                    ))
                }
                (None, n) => {
                    return Err(GraphError::field(
                        format!("arcs[{k}].ends"),
                        format!("expected 2 endpoints, found {n}"),
                    ))
                }
            }
        }
        Ok(WebPatch {
            p,
            case: self.case,
            vertex_ids: ids,
            signs: self.q_vertices.iter().map(|v| v.sign).collect(),
            arcs,
            arc_ids,
            mirrored: false,
        })
    }

    pub fn from_paired(data: &PairedIntersection) -> Self {
        let three = matches!(data.case, Case::ThreeSummands { .. });
        GraphDocument {
            p: data.p,
            q: Some(data.q),
            case: data.case,
            q_vertices: (1..=data.q)
                .map(|i| QVertexDoc {
                    id: format!("v{i}"),
                    sign: data.q_sign(i),
                })
                .collect(),
            p_vertices: (1..=data.p)
                .map(|l| PVertexDoc {
                    id: format!("u{l}"),
                    sign: data.p_sign(l),
                    component: three.then(|| data.p_component(l)),
                })
                .collect(),
            arcs: data
                .arcs
                .iter()
                .zip(&data.arc_ids)
                .map(|(a, id)| ArcDoc {
                    id: Some(id.clone()),
                    ends: a
                        .iter()
                        .map(|g| EndDoc {
                            q: format!("v{}", g.q),
                            p: format!("u{}", g.p),
                        })
                        .collect(),
                    ghost: None,
                })
                .collect(),
        }
    }

    pub fn from_patch(patch: &WebPatch) -> Self {
        let vid = |v: usize| patch.vertex_ids[v].clone();
        GraphDocument {
            p: patch.p,
            q: None,
            case: patch.case,
            q_vertices: patch
                .vertex_ids
                .iter()
                .zip(&patch.signs)
                .map(|(id, &sign)| QVertexDoc {
                    id: id.clone(),
                    sign,
                })
                .collect(),
            p_vertices: Vec::new(),
            arcs: patch
                .arcs
                .iter()
                .zip(&patch.arc_ids)
                .map(|(a, id)| match *a {
                    PatchArc::Edge(ends) => ArcDoc {
                        id: Some(id.clone()),
                        ends: ends
                            .iter()
                            .map(|&(v, l)| EndDoc {
                                q: vid(v),
                                p: format!("u{l}"),
                            })
                            .collect(),
                        ghost: None,
                    },
                    PatchArc::Ghost { vertex, label } => ArcDoc {
                        id: Some(id.clone()),
                        ends: vec![EndDoc {
                            q: vid(vertex),
                            p: format!("u{label}"),
                        }],
                        ghost: Some(GhostDoc {
                            vertex: vid(vertex),
                            label,
                        }),
                    },
                })
                .collect(),
        }
    }
}

fn collect_all(
    slots: Vec<Option<Sign>>,
    field: &str,
    prefix: char,
) -> Result<Vec<Sign>, GraphError> {
    slots
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            s.ok_or_else(|| GraphError::field(field, format!("missing vertex {prefix}{}", k + 1)))
        })
        .collect()
}

fn json_field(e: &serde_json::Error) -> String {
    format!("json (line {}, column {})", e.line(), e.column())
}

pub fn load(path: &Path) -> Result<Document, GraphError> {
    GraphDocument::read(path)?.into_document()
}

#[cfg(test)]
mod tests {
    use super::*;

    const W1: &str = r#"{
      "p": 4, "case": {"type": "general", "l": 2},
      "q_vertices": [{"id": "v1", "sign": "+"}, {"id": "v2", "sign": "+"}],
      "arcs": [
        {"id": "a1", "ends": [{"q": "v1", "p": "u1"}, {"q": "v2", "p": "u2"}]},
        {"id": "a2", "ends": [{"q": "v1", "p": "u2"}, {"q": "v2", "p": "u1"}]},
        {"id": "a3", "ends": [{"q": "v1", "p": "u3"}, {"q": "v2", "p": "u4"}]},
        {"ends": [{"q": "v1", "p": "u4"}], "ghost": {"vertex": "v1", "label": 4}},
        {"ends": [{"q": "v2", "p": "u3"}], "ghost": {"vertex": "v2", "label": 3}}
      ]}"#;

    #[test]
    fn patch_round_trip() {
        let doc = GraphDocument::from_json(W1).unwrap();
        let Document::Patch(patch) = doc.clone().into_document().unwrap() else {
            panic!("expected a patch")
        };
        assert_eq!(patch.edges().count(), 3);
        assert_eq!(patch.ghosts().collect::<Vec<_>>(), vec![(0, 4), (1, 3)]);
        let again = GraphDocument::from_patch(&patch);
        assert_eq!(again.clone().into_patch().unwrap(), patch);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = W1.replace(
            r#""p": "u4"}], "ghost": {"vertex": "v1", "label": 4}"#,
            r#""p": "u4"}], "ghost": {"vertex": "v1", "label": 3}"#,
        );
        let err = GraphDocument::from_json(&bad)
            .unwrap()
            .into_document()
            .unwrap_err();
        assert!(err.to_string().contains("arcs[3].ghost"), "{err}");
        let bad = W1.replace(r#""q": "v2", "p": "u2"}]}"#, r#""q": "v9", "p": "u2"}]}"#);
        let err = GraphDocument::from_json(&bad)
            .unwrap()
            .into_document()
            .unwrap_err();
        assert!(err.to_string().contains("arcs[0].ends[1].q"), "{err}");
        let err = GraphDocument::from_json("{\"p\": 4}").unwrap_err();
        assert!(err.to_string().contains("json"));
    }
}
