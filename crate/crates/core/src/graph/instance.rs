use crate::error::{Error, Result};
use crate::graph::{EdgeSet, MultiGraph, Vertex, Weight};

/// A graph, its designated non-terminals, and optional edge weights.
/// Missing weights mean every edge weighs 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: MultiGraph,
    nt: Vec<bool>,
    weights: Option<Vec<Weight>>,
}

impl Instance {
    pub fn new<I>(graph: MultiGraph, nt: I, weights: Option<Vec<Weight>>) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut mask = vec![false; graph.n()];
        for v in nt {
            graph.check_vertex(v)?;
            mask[v] = true;
        }
        if let Some(w) = &weights {
            if w.len() != graph.m() {
                return Err(Error::Precondition(format!(
                    "{} weights given for {} edges",
                    w.len(),
                    graph.m()
                )));
            }
        }
        Ok(Instance { graph, nt: mask, weights })
    }

    pub fn unweighted<I>(graph: MultiGraph, nt: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        Instance::new(graph, nt, None)
    }

    /// Builds from `(u, v, w)` triples; self-loops are dropped together with their weight.
    pub fn from_weighted_edges<I>(n: usize, edges: &[(Vertex, Vertex, Weight)], nt: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let kept: Vec<_> = edges.iter().filter(|(u, v, _)| u != v).collect();
        let graph = MultiGraph::new(n, kept.iter().map(|(u, v, _)| (*u, *v)))?;
        let weights = kept.iter().map(|(_, _, w)| w.clone()).collect();
        Instance::new(graph, nt, Some(weights))
    }

    pub(crate) fn from_parts(graph: MultiGraph, nt: Vec<bool>, weights: Option<Vec<Weight>>) -> Self {
        debug_assert_eq!(nt.len(), graph.n());
        debug_assert!(weights.as_ref().map_or(true, |w| w.len() == graph.m()));
        Instance { graph, nt, weights }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_nt(&self, v: Vertex) -> bool {
        self.nt[v]
    }

    pub fn nt_mask(&self) -> &[bool] {
        &self.nt
    }

    pub fn nt_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.nt[v]).collect()
    }

    /// k, the number of non-terminals.
    pub fn nt_count(&self) -> usize {
        self.nt.iter().filter(|&&b| b).count()
    }

    /// Edges with both endpoints non-terminal, in id order.
    pub fn nt_edges(&self) -> Vec<usize> {
        (0..self.graph.m())
            .filter(|&e| {
                let (u, v) = self.graph.edge(e);
                self.nt[u] && self.nt[v]
            })
            .collect()
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weight(&self, e: usize) -> Weight {
        match &self.weights {
            Some(w) => w[e].clone(),
            None => Weight::one(),
        }
    }

    pub fn total_weight(&self, edges: &EdgeSet) -> Weight {
        edges.iter().map(|&e| self.weight(e)).sum()
    }

    /// Integer weights of all edges if every weight is a positive integer.
    pub fn integer_weights(&self) -> Option<Vec<u64>> {
        (0..self.graph.m())
            .map(|e| self.weight(e).as_u64().filter(|&w| w >= 1))
            .collect()
    }

    /// Whether every edge carries the same weight (true for unweighted instances).
    pub fn has_uniform_weights(&self) -> bool {
        match &self.weights {
            None => true,
            Some(w) => w.windows(2).all(|p| p[0] == p[1]),
        }
    }

    pub fn without_weights(&self) -> Instance {
        Instance { graph: self.graph.clone(), nt: self.nt.clone(), weights: None }
    }

    pub fn with_nt<I>(&self, nt: I) -> Result<Instance>
    where
        I: IntoIterator<Item = Vertex>,
    {
        Instance::new(self.graph.clone(), nt, self.weights.clone())
    }
}
