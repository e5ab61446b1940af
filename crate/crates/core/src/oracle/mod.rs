//! Brute-force reference solvers and instance generators.

mod generate;

use num_bigint::BigUint;

use crate::counting::WeightCountVector;
use crate::error::{Error, Result};
use crate::graph::union_find::DisjointSets;
use crate::graph::{EdgeId, EdgeSet, Instance, MultiGraph, Weight};

pub use generate::{false_twin_ham_instance, has_hamiltonian_cycle, petersen_graph, random_instance, star_graph, WeightMode};

pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Vertex cap for [`brute_force_solve`], overridable through `NTST_ORACLE_CAP`.
pub fn oracle_cap() -> usize {
    std::env::var("NTST_ORACLE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub feasible: bool,
    pub opt_weight: Option<Weight>,
    /// Admissible trees per total weight, for integer weights only. Same
    /// length convention as the counting module: `(n - 1) * max_weight + 1`.
    pub histogram: Option<WeightCountVector>,
    pub witness: Option<EdgeSet>,
}

/// Calls `visit` on every spanning tree of `g` (as edge ids in increasing
/// order). Include/exclude recursion over edges; an edge may only be left
/// out while the remaining edges can still connect the graph.
pub fn for_each_spanning_tree(g: &MultiGraph, mut visit: impl FnMut(&[EdgeId])) {
    enumerate(g, &[], &mut visit);
}

/// Number of spanning trees found by enumeration.
pub fn count_spanning_trees_by_enumeration(g: &MultiGraph) -> u64 {
    let mut count = 0;
    for_each_spanning_tree(g, |_| count += 1);
    count
}

fn enumerate(g: &MultiGraph, nt: &[bool], visit: &mut impl FnMut(&[EdgeId])) {
    let n = g.n();
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut remaining = vec![0usize; n];
    for &(u, v) in g.edges() {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut state = Enumeration { g, nt, ds: DisjointSets::new(n), chosen: Vec::new(), degree: vec![0; n], remaining };
    if state.can_still_connect(0) {
        state.recurse(0, visit);
    }
}

struct Enumeration<'a> {
    g: &'a MultiGraph,
    /// Non-terminal flags used for pruning; empty disables it.
    nt: &'a [bool],
    ds: DisjointSets,
    chosen: Vec<EdgeId>,
    degree: Vec<usize>,
    /// Incident edges not yet decided.
    remaining: Vec<usize>,
}

impl Enumeration<'_> {
    fn can_still_connect(&mut self, from: usize) -> bool {
        let edges = &self.g.edges()[from..];
        for &(u, v) in edges {
            self.ds.union(u, v);
        }
        let connected = self.ds.components() == 1;
        for _ in edges {
            self.ds.rollback();
        }
        connected
    }

    fn short_of_degree(&self, v: usize) -> bool {
        self.nt.get(v).copied().unwrap_or(false) && self.degree[v] + self.remaining[v] < 2
    }

    fn recurse(&mut self, i: usize, visit: &mut impl FnMut(&[EdgeId])) {
        if self.chosen.len() + 1 == self.g.n() {
            visit(&self.chosen);
            return;
        }
        if i == self.g.m() {
            return;
        }
        let (u, v) = self.g.edge(i);
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        if self.ds.union(u, v) {
            self.chosen.push(i);
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.recurse(i + 1, visit);
            self.degree[u] -= 1;
            self.degree[v] -= 1;
            self.chosen.pop();
        }
        self.ds.rollback();
        if !self.short_of_degree(u) && !self.short_of_degree(v) && self.can_still_connect(i + 1) {
            self.recurse(i + 1, visit);
        }
        self.remaining[u] += 1;
        self.remaining[v] += 1;
    }
}

pub fn brute_force_solve(inst: &Instance) -> Result<OracleResult> {
    brute_force_solve_with_cap(inst, oracle_cap())
}

/// Enumerates every admissible spanning tree. Trees that cannot give some
/// non-terminal degree two are cut off early, which skips only inadmissible trees.
pub fn brute_force_solve_with_cap(inst: &Instance, cap: usize) -> Result<OracleResult> {
    let n = inst.n();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    let g = inst.graph();
    let integral = inst.integer_weights();
    let mut histogram = integral.as_ref().map(|w| {
        let bound = w.iter().copied().max().unwrap_or(1) as usize;
        vec![BigUint::default(); n.saturating_sub(1) * bound + 1]
    });
    let mut best: Option<(Weight, EdgeSet)> = None;
    enumerate(g, inst.nt_mask(), &mut |tree: &[EdgeId]| {
        let mut degree = vec![0usize; n];
        for &e in tree {
            let (u, v) = g.edge(e);
            degree[u] += 1;
            degree[v] += 1;
        }
        if (0..n).any(|v| inst.is_nt(v) && degree[v] < 2) {
            return;
        }
        if let (Some(h), Some(w)) = (histogram.as_mut(), integral.as_ref()) {
            let q: u64 = tree.iter().map(|&e| w[e]).sum();
            h[q as usize] += 1u32;
        }
        let weight: Weight = tree.iter().map(|&e| inst.weight(e)).sum();
        if best.as_ref().is_none_or(|(b, _)| weight < *b) {
            best = Some((weight, tree.iter().copied().collect()));
        }
    });
    let histogram = histogram.map(WeightCountVector::new);
    Ok(match best {
        Some((weight, tree)) => OracleResult { feasible: true, opt_weight: Some(weight), histogram, witness: Some(tree) },
        None => OracleResult { feasible: false, opt_weight: None, histogram, witness: None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::kirchhoff_count;
    use crate::graph::is_admissible_spanning_tree;

    #[test]
    fn k4_with_one_nt_vertex() {
        let inst = Instance::unweighted(MultiGraph::complete(4), [0]).unwrap();
        let res = brute_force_solve(&inst).unwrap();
        assert!(res.feasible);
        assert_eq!(res.opt_weight, Some(Weight::from(3)));
        assert_eq!(res.histogram.unwrap().get(3), Some(&BigUint::from(7u32)));
        assert!(is_admissible_spanning_tree(&inst, &res.witness.unwrap()).unwrap());
    }

    #[test]
    fn all_nt_cycle_is_infeasible() {
        let inst = Instance::unweighted(MultiGraph::cycle(4), 0..4).unwrap();
        assert!(!brute_force_solve(&inst).unwrap().feasible);
    }

    #[test]
    fn p3_unique_tree() {
        let inst = Instance::unweighted(MultiGraph::path(3), [1]).unwrap();
        let res = brute_force_solve(&inst).unwrap();
        assert_eq!(res.witness, Some(EdgeSet::from([0, 1])));
        assert_eq!(res.histogram.unwrap().total(), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_matches_kirchhoff() {
        for g in [MultiGraph::complete(6), MultiGraph::cycle(7), petersen_graph(), MultiGraph::new(3, [(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap()] {
            assert_eq!(BigUint::from(count_spanning_trees_by_enumeration(&g)), kirchhoff_count(&g));
        }
        assert_eq!(count_spanning_trees_by_enumeration(&MultiGraph::complete(8)), 262_144);
        assert_eq!(count_spanning_trees_by_enumeration(&MultiGraph::empty(2)), 0);
        assert_eq!(count_spanning_trees_by_enumeration(&MultiGraph::empty(1)), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::unweighted(MultiGraph::path(5), []).unwrap();
        assert_eq!(brute_force_solve_with_cap(&inst, 4), Err(Error::OracleCapExceeded { n: 5, cap: 4 }));
    }
}
