//! Eternal vertex cover: exact solvers, the `evc = mvc` characterization,
//! certified defense strategies and instance gadgets.

pub mod characterize;
pub mod defense;
pub mod gadgets;
pub mod game;
pub mod graph;
pub mod matching;
pub mod vc;

pub use graph::{Graph, GraphError, VertexId, VertexSet};
pub use vc::{Engine, Limits};
