use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::gamma::{build_gamma, realize_gamma, GammaGraph};
use super::great::{verify_great_web, Certification, GreatWeb};
use crate::error::{GraphError, WebError};
use crate::graph::{Document, GraphDocument, Source};

/// A web file: a graph file plus the web's vertex ids.
/// With no vertices listed the web is every Q vertex of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebSpec {
    pub graph: PathBuf,
    #[serde(default)]
    pub web_vertices: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedWeb {
    pub document: Document,
    pub vertices: Vec<String>,
}

impl LoadedWeb {
    pub fn source(&self) -> Source<'_> {
        match &self.document {
            Document::Paired(d) => Source::Paired(d),
            Document::Patch(p) => Source::Patch(p),
        }
    }

    pub fn certify(&self) -> Result<Certification, GraphError> {
        let ids: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        verify_great_web(self.source(), &ids)
    }

    /// Γ from the pairing when there is one, otherwise from a realization.
    pub fn gamma(&self, web: &GreatWeb) -> Result<GammaGraph, WebError> {
        match &self.document {
            Document::Paired(d) => build_gamma(d, web),
            Document::Patch(_) => realize_gamma(web),
        }
    }
}

/// Reads either a web file or a bare graph file.
pub fn load_web(path: &Path) -> Result<LoadedWeb, GraphError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::field("file", format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| GraphError::field("json", e.to_string()))?;
    let (document, listed) = if value.get("graph").is_some() {
        let spec: WebSpec = serde_json::from_value(value)
            .map_err(|e| GraphError::field("web_vertices", e.to_string()))?;
        let graph = path.parent().unwrap_or(Path::new(".")).join(&spec.graph);
        let doc = GraphDocument::read(&graph)
            .map_err(|e| GraphError::field("graph", e.to_string()))?
            .into_document()?;
        (doc, spec.web_vertices)
    } else {
        (
            GraphDocument::from_json(&text)?.into_document()?,
            Vec::new(),
        )
    };
    let vertices = if listed.is_empty() {
        match &document {
            Document::Paired(d) => (1..=d.q).map(|i| format!("v{i}")).collect(),
            Document::Patch(p) => p.vertex_ids.clone(),
        }
    } else {
        listed
    };
    Ok(LoadedWeb { document, vertices })
}
