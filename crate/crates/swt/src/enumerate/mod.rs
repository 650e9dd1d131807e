//! Exhaustive small-case generation and property sweeps.

mod braids;
mod paired;
mod partial;
mod sweep;
mod webs;

pub use braids::{components_union_find, exponent_vectors, knot_classes, positive_words};
pub use paired::{
    check_paired_params, enumerate_paired, enumerate_paired_with_stats, great_webs, PairedConfig,
    PairedStats,
};
pub use sweep::{
    run_property_sweep, run_property_sweep_with, Canonicalization, Counterexample, GridEntry,
    KnotSweep, Manifest, Property, Sample, SweepSpec, Tally, Target,
};
pub use webs::{canonical_arcs, case_consistent, check_web_params, enumerate_webs, GhostRule};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("invalid parameters: {0}")]
    Params(String),
}
