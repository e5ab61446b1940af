//! Exact algorithms for spanning trees in which a designated set of
//! non-terminal vertices must all be internal (degree at least two), in both
//! the decision and the minimum-weight form.
//!
//! - [`kernel`]: polynomial-time reductions to small equivalent instances,
//!   with reduction traces that lift solutions back.
//! - [`counting`]: weight-graded spanning tree counting and the
//!   inclusion-exclusion solver, exponential only in the number of non-terminals.
//! - [`matroid`]: weighted matroid intersection of a graphic and a bounded
//!   partition matroid, exponential only in the number of edges between non-terminals.
//! - [`oracle`]: brute-force reference solvers and instance generators.
//! - [`format`] and [`cli`]: the text instance format and the `ntst` command line.

pub mod cli;
pub mod counting;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod kernel;
pub mod matroid;
pub mod oracle;
pub mod solve;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Instance, MultiGraph, Weight};
pub use solve::{choose_algorithm, solve, solve_with_kernel, Algorithm, KernelSolve, SolveOptions, SolveResult, SolveStats};
