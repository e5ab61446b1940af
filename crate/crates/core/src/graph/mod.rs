//! Multigraphs, problem instances, and the spanning-tree helpers shared by
//! every solver.

mod instance;
mod multigraph;
mod tree;
pub mod union_find;
mod weight;

pub use instance::Instance;
pub use multigraph::{Contraction, EdgeId, EdgeSet, MultiGraph, Subgraph, Vertex};
pub use tree::{extend_forest_to_spanning_tree, is_admissible_spanning_tree, is_spanning_tree};
pub use weight::Weight;
