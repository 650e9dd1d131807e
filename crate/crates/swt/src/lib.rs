//! Combinatorics of graphs of intersection for reducible Dehn surgery, and
//! positive braid word analysis.
//!
//! - [`braid`]: braid words, closure data, rewrites and the three-summand
//!   exclusion for positive braid closures.
//! - [`map`]: rotation systems and face tracing.
//! - [`graph`]: paired intersection graphs `G_Q`, `G_P` and web patches.
//! - [`web`]: great webs, the Γ graph, region counts and divisibility.
//! - [`enumerate`]: exhaustive small-case generation and property sweeps.
//! - [`cli`]: the `swt` command line.

pub mod braid;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod map;
pub mod web;

pub use braid::{BraidWord, Letter};
pub use error::{BraidError, GraphError, WebError};
