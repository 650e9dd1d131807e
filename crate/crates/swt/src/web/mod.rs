//! Great webs and the counting machinery on the P side.

mod gamma;
mod great;
mod quota;
mod regions;
mod shared;
mod slopes;
mod spec;

pub use gamma::{build_gamma, check_valences, realize_gamma, AnchorCycle, GammaEdge, GammaGraph};
pub(crate) use great::certify;
pub use great::{verify_great_web, Certification, Ghost, GreatWeb};
pub use quota::{
    find_full_quota, interior_bigons, parallel_families, ParallelFamily, Quota, QuotaReport,
};
pub use regions::{
    decompose_regions, verify_divisibility, web_divisibility, CheckLine, DivisibilityReport,
    Region, RegionData,
};
pub use shared::{
    shared_identity, shared_vertex_analysis, SharedIdentity, SharedPair, SharedReport,
};
pub use slopes::{feasible_slopes, SlopeCandidate};
pub use spec::{load_web, LoadedWeb, WebSpec};
