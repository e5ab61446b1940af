use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::union_find::DisjointSets;
use crate::graph::{is_admissible_spanning_tree, EdgeId, EdgeSet, Instance, MultiGraph, Weight};
use crate::matroid::intersection::ScaledCosts;
use crate::matroid::PartitionMatroid;
use crate::solve::{with_threads, SolveOptions, SolveResult, SolveStats};

/// Acyclic subsets of the non-terminal edges, smallest first, ties broken
/// lexicographically by edge id.
pub fn acyclic_nt_edge_subsets(inst: &Instance) -> Vec<Vec<EdgeId>> {
    fn grow(g: &MultiGraph, edges: &[EdgeId], ds: &mut DisjointSets, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        let Some((&e, rest)) = edges.split_first() else {
            out.push(cur.clone());
            return;
        };
        grow(g, rest, ds, cur, out);
        let (u, v) = g.edge(e);
        if ds.union(u, v) {
            cur.push(e);
            grow(g, rest, ds, cur, out);
            cur.pop();
        }
        ds.rollback();
    }
    let mut out = Vec::new();
    let mut ds = DisjointSets::new(inst.n());
    grow(inst.graph(), &inst.nt_edges(), &mut ds, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Exact minimum-weight admissible spanning tree for arbitrary non-negative
/// rational weights, one matroid intersection per acyclic `F`.
pub fn solve_by_matroid_intersection(inst: &Instance, options: &SolveOptions) -> Result<SolveResult> {
    let g = inst.graph();
    if inst.n() == 0 {
        return Ok(SolveResult {
            feasible: true,
            weight: Some(Weight::zero()),
            tree: Some(EdgeSet::new()),
            counts: None,
            stats: SolveStats::default(),
        });
    }
    if !g.is_connected() {
        return Ok(SolveResult::infeasible(SolveStats::default()));
    }
    let weights: Vec<Weight> = (0..g.m()).map(|e| inst.weight(e)).collect();
    let costs = ScaledCosts::new(&weights);
    let subsets = acyclic_nt_edge_subsets(inst);
    let stats = SolveStats { subsets_evaluated: 0, branches_evaluated: subsets.len() as u64 };

    let outcomes: Vec<Option<EdgeSet>> = with_threads(options.threads, || {
        if options.threads > 1 {
            subsets.par_iter().map(|f| branch(inst, f, &costs)).collect::<Result<_>>()
        } else {
            subsets.iter().map(|f| branch(inst, f, &costs)).collect::<Result<_>>()
        }
    })?;

    let best = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(i, tree)| tree.map(|t| (inst.total_weight(&t), i, t)))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let Some((weight, _, tree)) = best else {
        return Ok(SolveResult::infeasible(stats));
    };
    assert!(is_admissible_spanning_tree(inst, &tree)?, "matroid witness is not admissible");
    Ok(SolveResult { feasible: true, weight: Some(weight), tree: Some(tree), counts: None, stats })
}

/// Cheapest admissible tree whose non-terminal edges are exactly `f`.
fn branch(inst: &Instance, f: &[EdgeId], costs: &ScaledCosts) -> Result<Option<EdgeSet>> {
    let g = inst.graph();
    let n = inst.n();
    let mut ds = DisjointSets::new(n);
    let mut deg_f = vec![0usize; n];
    for &e in f {
        let (u, v) = g.edge(e);
        ds.union(u, v);
        deg_f[u] += 1;
        deg_f[v] += 1;
    }
    let mut class = vec![usize::MAX; n];
    let mut classes = 0;
    for v in 0..n {
        let r = ds.find(v);
        if class[r] == usize::MAX {
            class[r] = classes;
            classes += 1;
        }
        class[v] = class[r];
    }

    let nt_vertices = inst.nt_vertices();
    let mut block_index = vec![usize::MAX; n];
    for (i, &v) in nt_vertices.iter().enumerate() {
        block_index[v] = i;
    }
    let rest = nt_vertices.len();
    let mut blocks = vec![Vec::new(); rest + 1];
    let mut origin = Vec::new();
    let mut contracted = MultiGraph::empty(classes);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if inst.is_nt(u) && inst.is_nt(v) {
            continue;
        }
        debug_assert_ne!(class[u], class[v], "only non-terminal vertices are merged");
        let block = if inst.is_nt(u) {
            block_index[u]
        } else if inst.is_nt(v) {
            block_index[v]
        } else {
            rest
        };
        blocks[block].push(contracted.push_edge(class[u], class[v]));
        origin.push(e);
    }
    if !contracted.is_connected() {
        return Ok(None);
    }

    let mut lower: Vec<usize> = nt_vertices.iter().map(|&v| 2usize.saturating_sub(deg_f[v])).collect();
    lower.push(0);
    let upper: Vec<usize> = blocks.iter().map(Vec::len).collect();
    if lower.iter().zip(&upper).any(|(l, u)| l > u) {
        return Ok(None);
    }
    let pm = match PartitionMatroid::new(origin.len(), blocks, lower, upper, classes - 1) {
        Ok(pm) => pm,
        Err(Error::EmptyBaseFamily(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(costs.select(&origin).common_base(&contracted, &pm).map(|base| {
        let mut tree: EdgeSet = f.iter().copied().collect();
        tree.extend(base.into_iter().map(|e| origin[e]));
        tree
    }))
}
