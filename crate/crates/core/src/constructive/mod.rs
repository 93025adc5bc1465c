//! Constructive versions of the reduction steps and the bound-achieving algorithm.

pub mod algorithm;
pub mod brooks;
pub mod lemmas;

pub use algorithm::{construct_ids, Construction, ReductionTrace, Rule, Step};
pub use brooks::{brooks_coloring, color_connected, Coloring};
pub use lemmas::BalancedProfile;
