//! Exact k-vertex-cover on graphs of maximum degree four, the equivalence
//! between hitting induced axis-parallel slabs and vertex cover on braid
//! graphs, and the gadget pipeline reducing cubic-graph vertex cover to
//! braid-graph vertex cover.
//!
//! The crate is `no_std` + `alloc`; all file formats and the CLI live in the
//! companion `braidvc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branch;
pub mod graph;
pub mod matching;
pub mod npred;
pub mod oracle;
pub mod preprocess;
pub mod slabs;

pub use branch::{solve_vc, CoverResult, RuleId, SolveConfig, SolveError};
pub use graph::{Graph, VertexId};
pub use slabs::{braid_from_points, points_from_braid, verify_braid, BraidGraph, PointSet};
