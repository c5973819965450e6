//! Exhaustive, isomorph-free generation of graphs with a prescribed number
//! of hamiltonian cycles, plus the structural toolkit around it: canonical
//! labeling, exact cycle counting, planarity, named constructions, and
//! conjecture verifiers.
//!
//! The narrative guide lives in `book/`; its code snippets are compiled and
//! run as doc-tests through the [`book`] module.

pub mod canon;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod planarity;
pub mod props;
pub mod verify;

pub mod book;

pub use graph::{BitIter, DegreeProfile, Graph, GraphError, VertexPair, MAX_VERTICES};
