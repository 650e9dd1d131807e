//! Braid words, their closures, and the rewrites used to shrink positive
//! braids.

mod analysis;
mod moves;
mod reduce;
pub mod trace;
mod word;

pub use analysis::{analyze, BraidAnalysis};
pub use moves::{applicable_moves, apply_move, Move};
pub use reduce::{
    eliminate_generator, exclude_three_summands, reduce_search, split_connected_sum,
    ExclusionReport, Reduction, SearchOptions, Verdict,
};
pub use word::{BraidWord, Letter};
