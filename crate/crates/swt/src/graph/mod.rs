//! Labeled intersection graphs `G_Q`, `G_P` and great-web patches.
//!
//! Rotations are never supplied by the user: they follow from vertex signs
//! and the cyclic order of the labels.

mod dot;
mod io;
mod lambda;
mod scharlemann;
mod side;
mod types;
mod validate;

pub use dot::export_dot;
pub use io::{load, ArcDoc, Document, EndDoc, GhostDoc, GraphDocument, PVertexDoc, QVertexDoc};
pub use lambda::{trace_lambda_path, trace_lambda_path_in, LambdaPath};
pub use scharlemann::{
    find_scharlemann_cycles, find_scharlemann_cycles_on, scan_view, scharlemann_in_view,
    ScharlemannCycle,
};
pub use side::{trace_faces, Corner, Face, SideView, Source};
pub use types::{
    consecutive_pair, label_succ, Case, GridPoint, PComponent, PairedIntersection, PatchArc, Side,
    Sign, WebPatch,
};
pub use validate::{validate, Check, ValidationReport, Violation};
