use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },

    #[error("edge id {edge} out of range for a graph with {m} edges")]
    InvalidEdge { edge: EdgeId, m: usize },

    #[error("edge set contains a cycle")]
    CyclicForest,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("partition matroid has no base: {0}")]
    EmptyBaseFamily(String),

    #[error("brute-force oracle refuses n = {n} (cap {cap})")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
