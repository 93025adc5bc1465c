//! Independent domination in graphs of bounded maximum degree.
//!
//! The crate bundles an exact branch-and-bound oracle for the independent
//! domination number `i(G)`, a recognizer and constructor for Δ-special
//! graphs (the equality cases of the `(1-t)(n-1)+1` bound), generators for
//! the extremal families, an isomorph-free enumerator of small connected
//! graphs, a certifying constructive algorithm that meets the
//! `(1-t)|V| + t·n_Δ` bound, and the campaigns that check all of it.

pub mod bitset;
pub mod bounds;
pub mod canon;
pub mod constructive;
pub mod exact;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod special;

pub use bitset::VertexSet;
pub use bounds::{BoundParams, Q};
pub use graph::{Graph, GraphError, IdsCheck, IdsWitness, WitnessKind};
