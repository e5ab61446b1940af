use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::union_find::DisjointSets;

pub type Vertex = usize;
pub type EdgeId = usize;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Undirected multigraph on vertices `0..n`. Parallel edges are kept,
/// self-loops are dropped at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

/// Result of rewriting a graph by deleting vertices or edges.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: MultiGraph,
    /// old vertex -> new vertex
    pub vertex_map: Vec<Option<Vertex>>,
    /// new vertex -> old vertex
    pub vertex_origin: Vec<Vertex>,
    /// new edge -> old edge
    pub edge_origin: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// old vertex -> new vertex (surjective)
    pub vertex_map: Vec<Vertex>,
    /// old edge -> new edge; `None` for contracted edges and loops
    pub edge_map: Vec<Option<EdgeId>>,
}

impl MultiGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut graph = MultiGraph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u != v {
                graph.push_edge(u, v);
            }
        }
        Ok(graph)
    }

    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        MultiGraph::new(n, edges).expect("valid endpoints")
    }

    pub fn cycle(n: usize) -> Self {
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid endpoints")
    }

    pub fn path(n: usize) -> Self {
        MultiGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid endpoints")
    }

    pub(crate) fn push_edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        debug_assert!(u != v && u < self.n && v < self.n);
        let id = self.edges.len();
        self.edges.push((u, v));
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        id
    }

    pub(crate) fn push_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.m() {
            Ok(())
        } else {
            Err(Error::InvalidEdge { edge: e, m: self.m() })
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&vec![true; self.n])
    }

    /// Connectivity of the subgraph induced by the vertices flagged in `keep`.
    pub fn is_connected_within(&self, keep: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| keep[v]) else {
            return true;
        };
        let total = keep.iter().filter(|&&k| k).count();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == total
    }

    /// Whether the graph stays connected after removing edge `e`.
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        let (s, t) = self.edges[e];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(w, id) in &self.adj[u] {
                if id != e && !seen[w] {
                    if w == t {
                        return false;
                    }
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        true
    }

    pub fn is_acyclic<'a, I>(&self, edges: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut ds = DisjointSets::new(self.n);
        for &e in edges {
            self.check_edge(e)?;
            let (u, v) = self.edges[e];
            if !ds.union(u, v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subgraph induced by the vertices flagged in `keep`, renumbered in order.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Subgraph {
        let mut vertex_map = vec![None; self.n];
        let mut vertex_origin = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                vertex_map[v] = Some(vertex_origin.len());
                vertex_origin.push(v);
            }
        }
        let mut graph = MultiGraph::empty(vertex_origin.len());
        let mut edge_origin = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (vertex_map[u], vertex_map[v]) {
                graph.push_edge(a, b);
                edge_origin.push(id);
            }
        }
        Subgraph { graph, vertex_map, vertex_origin, edge_origin }
    }

    /// Same vertex set without the edges in `remove`.
    pub fn without_edges(&self, remove: &EdgeSet) -> Subgraph {
        let mut graph = MultiGraph::empty(self.n);
        let mut edge_origin = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if !remove.contains(&id) {
                graph.push_edge(u, v);
                edge_origin.push(id);
            }
        }
        Subgraph {
            graph,
            vertex_map: (0..self.n).map(Some).collect(),
            vertex_origin: (0..self.n).collect(),
            edge_origin,
        }
    }

    /// Contracts the forest `f`. Edges whose endpoints get identified become
    /// loops and are dropped; parallel edges survive. Each contracted class is
    /// numbered by its smallest original vertex, in increasing order.
    pub fn contract_edges(&self, f: &EdgeSet) -> Result<Contraction> {
        let mut ds = DisjointSets::new(self.n);
        for &e in f {
            self.check_edge(e)?;
            let (u, v) = self.edges[e];
            if !ds.union(u, v) {
                return Err(Error::CyclicForest);
            }
        }
        let mut class_id = vec![usize::MAX; self.n];
        let mut vertex_map = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            let root = ds.find(v);
            if class_id[root] == usize::MAX {
                class_id[root] = next;
                next += 1;
            }
            vertex_map[v] = class_id[root];
        }
        let mut graph = MultiGraph::empty(next);
        let mut edge_map = vec![None; self.m()];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (vertex_map[u], vertex_map[v]);
            if a != b {
                edge_map[id] = Some(graph.push_edge(a, b));
            }
        }
        Ok(Contraction { graph, vertex_map, edge_map })
    }
}
