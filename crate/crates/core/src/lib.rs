//! Minimum-weight connected and 2-edge-connected d-regular spanning
//! subgraphs of complete weighted graphs.
//!
//! The solvers in [`connfactor`] build on exact minimum-weight d-factors
//! ([`factors`], via blossom matching or min-cost flow) and tour
//! heuristics ([`tours`]). Exponential exact solvers in [`oracle`] serve as
//! ground truth on small instances, and [`verify`] checks any claimed
//! solution against the definitions.

pub mod connfactor;
pub mod decomposition;
pub mod error;
pub mod euler;
pub mod factors;
pub mod graph;
pub mod instances;
pub mod io;
pub mod matching;
pub mod metric;
pub mod mst;
pub mod oracle;
pub mod tours;
pub mod verify;

pub use connfactor::{solve, Algorithm, SolveReport};
pub use error::{Error, Result};
pub use factors::FactorSpec;
pub use graph::{Edge, Instance, Orientation, SparseGraph, Subgraph, Tour, Weight};
pub use matching::Sense;
pub use tours::TourStrategy;
pub use verify::{verify_edges, verify_subgraph, VerifyClass, VerifyReport};
