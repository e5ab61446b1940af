use crate::graph::union_find::DisjointSets;
use crate::graph::{EdgeId, EdgeSet, MultiGraph};

/// Cycle matroid of a multigraph: edge sets are independent iff acyclic.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    host: MultiGraph,
}

impl GraphicMatroid {
    pub fn new(host: MultiGraph) -> Self {
        GraphicMatroid { host }
    }

    pub fn host(&self) -> &MultiGraph {
        &self.host
    }

    pub fn ground_size(&self) -> usize {
        self.host.m()
    }

    /// Size of a spanning forest.
    pub fn rank(&self) -> usize {
        let mut ds = DisjointSets::new(self.host.n());
        for &(u, v) in self.host.edges() {
            ds.union(u, v);
        }
        self.host.n() - ds.components()
    }

    /// Out-of-range edge ids make the set dependent.
    pub fn is_independent(&self, f: &EdgeSet) -> bool {
        self.is_independent_slice(&f.iter().copied().collect::<Vec<_>>())
    }

    pub fn is_independent_slice(&self, f: &[EdgeId]) -> bool {
        let mut ds = DisjointSets::new(self.host.n());
        f.iter().all(|&e| e < self.host.m() && {
            let (u, v) = self.host.edge(e);
            ds.union(u, v)
        })
    }
}
