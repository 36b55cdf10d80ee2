//! Exact computations on traces of finite set families.
//!
//! Families live on a ground set `[n]` with `n <= 64`; every member is one
//! machine word. Elements are 0-indexed in memory and 1-indexed in every
//! textual form (`Display`, the text and JSON file formats, error messages).
//!
//! The crate is organised the way the computations stack up:
//!
//! * [`setcore`] – words, families, traces, links, shadows, file formats.
//! * [`transforms`] – down-shift compression, symmetrization, the
//!   equivalence-class partition of a down-set.
//! * [`constructions`] – partite families, Turán graphs, the six-vertex
//!   family, formula evaluators.
//! * [`search`] – branch-and-bound for `m(n,a,b)`, `m~(n,4,c)` and the
//!   antichain variant.
//! * [`cancellative`] – cancellative / union-free predicates and the uniform
//!   hypergraph searches (`ex_k`, maximum cancellative families).

pub mod cancellative;
pub mod constructions;
mod error;
pub mod random;
pub mod search;
pub mod setcore;
pub mod transforms;

pub use error::{Error, Result};
pub use setcore::{PartitionStructure, SetFamily, SetWord};
