//! Exact local (adjacency) metric dimension and a constructive upper bound
//! `dim_{A,l}(G) <= floor((w - 2) / (w - 1) * n)` in terms of the clique
//! number `w`.

pub mod clique;
pub mod constructor;
pub mod counting;
pub mod dims;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod packing;
pub mod sweep;
pub mod verifier;

pub use graph::{Distance, Graph, GraphError, VertexSet, MAX_VERTICES};
