//! Graphic and lower-bounded partition matroids, weighted matroid
//! intersection, and the exact solver that branches over non-terminal edges.

mod graphic;
mod intersection;
mod partition;
mod solver;

pub use graphic::GraphicMatroid;
pub use intersection::{min_weight_common_base, CommonBaseResult};
pub use partition::PartitionMatroid;
pub use solver::{acyclic_nt_edge_subsets, solve_by_matroid_intersection};
