//! Exact combinatorial search for directed Ramsey numbers, balanced
//! independent transversals in K_n-free graphs, and the witness graphs that
//! go with them.

pub mod augment;
pub mod bitset;
pub mod budget;
pub mod canon;
pub mod constructions;
pub mod digraph;
pub mod embed;
pub mod error;
pub mod format;
pub mod graph;
pub mod ortho;
pub mod par;
pub mod ramsey;
pub mod transversal;

pub use bitset::VertexSet;
pub use budget::Budget;
pub use constructions::PartitionedGraph;
pub use digraph::BitDigraph;
pub use error::{Error, Result};
pub use graph::UGraph;
