use crate::error::{Error, Result};
use crate::graph::union_find::DisjointSets;
use crate::graph::{EdgeSet, Instance, MultiGraph};

/// Checks that `t` is a spanning tree in which every non-terminal has degree at least two.
pub fn is_admissible_spanning_tree(inst: &Instance, t: &EdgeSet) -> Result<bool> {
    let g = inst.graph();
    for &e in t {
        g.check_edge(e)?;
    }
    if !is_spanning_tree(g, t)? {
        return Ok(false);
    }
    let mut degree = vec![0usize; g.n()];
    for &e in t {
        let (u, v) = g.edge(e);
        degree[u] += 1;
        degree[v] += 1;
    }
    Ok((0..g.n()).all(|v| !inst.is_nt(v) || degree[v] >= 2))
}

pub fn is_spanning_tree(g: &MultiGraph, t: &EdgeSet) -> Result<bool> {
    if t.len() != g.n().saturating_sub(1) {
        return Ok(false);
    }
    // n - 1 acyclic edges on n vertices are connected.
    g.is_acyclic(t)
}

/// Greedily completes the forest `f` to a spanning tree of `g`.
pub fn extend_forest_to_spanning_tree(g: &MultiGraph, f: &EdgeSet) -> Result<EdgeSet> {
    let mut ds = DisjointSets::new(g.n());
    for &e in f {
        g.check_edge(e)?;
        let (u, v) = g.edge(e);
        if !ds.union(u, v) {
            return Err(Error::CyclicForest);
        }
    }
    let mut tree = f.clone();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if ds.union(u, v) {
            tree.insert(e);
        }
    }
    if g.n() > 0 && ds.components() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn set(ids: &[usize]) -> EdgeSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn p3_middle_is_internal() {
        let inst = Instance::unweighted(MultiGraph::path(3), [1]).unwrap();
        assert!(is_admissible_spanning_tree(&inst, &set(&[0, 1])).unwrap());
    }

    #[test]
    fn star_with_nt_leaf_is_rejected() {
        let g = MultiGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = Instance::unweighted(g, [2]).unwrap();
        assert!(!is_admissible_spanning_tree(&inst, &set(&[0, 1, 2])).unwrap());
    }

    #[test]
    fn c4_all_nt_has_no_admissible_tree() {
        let inst = Instance::unweighted(MultiGraph::cycle(4), 0..4).unwrap();
        for skip in 0..4 {
            let t: EdgeSet = (0..4).filter(|&e| e != skip).collect();
            assert!(!is_admissible_spanning_tree(&inst, &t).unwrap());
        }
    }

    #[test]
    fn invalid_edge_is_an_error() {
        let inst = Instance::unweighted(MultiGraph::path(3), []).unwrap();
        assert!(is_admissible_spanning_tree(&inst, &set(&[0, 7])).is_err());
    }

    #[test]
    fn cycle_edges_are_not_a_tree() {
        let inst = Instance::unweighted(MultiGraph::complete(3), []).unwrap();
        assert!(!is_admissible_spanning_tree(&inst, &set(&[0, 1, 2])).unwrap());
    }

    #[test]
    fn extend_k3() {
        let g = MultiGraph::complete(3);
        let t = extend_forest_to_spanning_tree(&g, &set(&[0])).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.contains(&0));
    }

    #[test]
    fn extend_c4_keeps_f_and_adds_one_of_the_others() {
        // Spanning trees of C4 are the four 3-subsets; those containing {e0, e2}
        // are {0,1,2} and {0,2,3}.
        let g = MultiGraph::cycle(4);
        let t = extend_forest_to_spanning_tree(&g, &set(&[0, 2])).unwrap();
        assert!(t == set(&[0, 1, 2]) || t == set(&[0, 2, 3]));
    }

    #[test]
    fn extend_errors() {
        let g = MultiGraph::complete(3);
        assert_eq!(extend_forest_to_spanning_tree(&g, &set(&[0, 1, 2])), Err(Error::CyclicForest));
        let g = MultiGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(extend_forest_to_spanning_tree(&g, &set(&[])), Err(Error::Disconnected));
    }
}
