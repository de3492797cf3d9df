//! Conversions between certificate forms.

mod basic;
mod contract;
mod edge_rep;

pub use basic::{from_basic, to_basic};
pub use contract::{apply_contraction, to_contractions};
pub use edge_rep::{edge_to_path, identical, path_to_edge, replay_edge_rep, EdgeRepresentation, Op};
