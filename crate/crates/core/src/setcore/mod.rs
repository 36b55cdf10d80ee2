//! Set families on small ground sets: the data model plus traces, links,
//! level slices, shadows and the down-set / antichain predicates.

mod family;
mod io;
mod ops;
mod partition;
mod word;

pub use family::{SetFamily, INDEX_MAX_N};
pub use ops::MaxTrace;
pub use partition::PartitionStructure;
pub use word::{ground_mask, k_subsets, Elements, KSubsets, SetWord, MAX_N};

pub(crate) use word::{binomial, check_n, project};
