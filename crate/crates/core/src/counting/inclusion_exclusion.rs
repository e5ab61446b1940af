//! Admissible trees by weight: sum over subsets X of the non-terminals, with
//! sign `(-1)^|X|`, of the number of weight-q spanning trees in which every
//! vertex of X is a leaf. Such a tree is a spanning tree of `G - X` plus one
//! edge from each `x` into `V \ X`, so each term is the convolution of the
//! graded tree counts of `G - X` with the graded matching counts.
//!
//! All terms are computed modulo a few large primes and the final vector is
//! reconstructed by Chinese remaindering; the modulus exceeds twice a bound on
//! the total tree count, so the lift is exact.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::counting::matchings::count_constrained_matchings;
use crate::counting::matrix_tree::{tree_count_bound, tree_polynomial_mod, validate_weights};
use crate::counting::modular::{crt_symmetric, primes_for_bound, Field};
use crate::counting::WeightCountVector;
use crate::error::{Error, Result};
use crate::graph::{is_admissible_spanning_tree, EdgeSet, Instance, MultiGraph, Vertex, Weight};
use crate::solve::{with_threads, SolveOptions, SolveResult, SolveStats};

/// Largest non-terminal count accepted by the subset loop.
pub const MAX_IE_NON_TERMINALS: usize = 40;

/// Integer weights and the bound `W` used by the counting solver.
fn integral_weights(inst: &Instance, max_weight: Option<u64>) -> Result<(Vec<u64>, u64)> {
    let weights = inst.integer_weights().ok_or_else(|| {
        Error::InvalidWeight("inclusion-exclusion needs positive integer weights".into())
    })?;
    let bound = max_weight.unwrap_or_else(|| weights.iter().copied().max().unwrap_or(1));
    validate_weights(&weights, bound)?;
    Ok((weights, bound))
}

pub fn count_admissible_trees_by_weight(inst: &Instance, max_weight: Option<u64>) -> Result<WeightCountVector> {
    let (weights, bound) = integral_weights(inst, max_weight)?;
    Ok(admissible_counts(inst.graph(), &weights, inst.nt_mask(), bound, 1)?.0)
}

/// Counts plus the number of subsets evaluated.
fn admissible_counts(
    g: &MultiGraph,
    weights: &[u64],
    nt: &[bool],
    max_weight: u64,
    threads: usize,
) -> Result<(WeightCountVector, u64)> {
    let n = g.n();
    let len = n.saturating_sub(1) * max_weight as usize + 1;
    let nt_list: Vec<Vertex> = (0..n).filter(|&v| nt[v]).collect();
    if n < 3 {
        return Ok((small_case(g, weights, &nt_list, len), 1u64 << nt_list.len().min(63)));
    }
    if nt_list.len() > MAX_IE_NON_TERMINALS {
        return Err(Error::Precondition(format!(
            "{} non-terminals exceed the inclusion-exclusion limit of {MAX_IE_NON_TERMINALS}",
            nt_list.len()
        )));
    }
    let primes = primes_for_bound(&tree_count_bound(g, &vec![true; n]));
    let fields: Vec<Field> = primes.iter().map(|&p| Field::new(p)).collect();
    let subsets = 1u64 << nt_list.len();

    let zero = || vec![vec![0u64; len]; fields.len()];
    let add_term = |mut acc: Vec<Vec<u64>>, mask: u64| {
        subset_term(g, weights, &nt_list, mask, len, &fields, &mut acc);
        acc
    };
    let merge = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (f, (ra, rb)) in fields.iter().zip(a.iter_mut().zip(&b)) {
            for (x, &y) in ra.iter_mut().zip(rb) {
                *x = f.add(*x, y);
            }
        }
        a
    };
    let residues = with_threads(threads, || {
        if threads <= 1 {
            (0..subsets).fold(zero(), add_term)
        } else {
            (0..subsets).into_par_iter().fold(zero, add_term).reduce(zero, merge)
        }
    });

    let counts = (0..len)
        .map(|q| {
            let r: Vec<u64> = fields.iter().zip(&residues).map(|(f, row)| f.from_mont(row[q])).collect();
            let value = crt_symmetric(&r, &primes);
            assert!(!value.is_negative(), "inclusion-exclusion produced a negative count at q = {q}");
            value.to_biguint().expect("non-negative")
        })
        .collect();
    Ok((WeightCountVector::new(counts), subsets))
}

/// Adds `(-1)^|X| * |trees of weight q with X as leaves|` into `acc` for every q.
fn subset_term(
    g: &MultiGraph,
    weights: &[u64],
    nt_list: &[Vertex],
    mask: u64,
    len: usize,
    fields: &[Field],
    acc: &mut [Vec<u64>],
) {
    let x: Vec<Vertex> = nt_list.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
    let mut keep = vec![true; g.n()];
    for &v in &x {
        keep[v] = false;
    }
    if x.iter().any(|&v| g.neighbors(v).iter().all(|&(w, _)| !keep[w])) {
        return;
    }
    if !g.is_connected_within(&keep) {
        return;
    }
    let matchings = count_constrained_matchings(g, &x, weights, len - 1);
    let column = matchings.last_row();
    let support: Vec<usize> = (0..len).filter(|&j| !column[j].is_zero()).collect();
    if support.is_empty() {
        return;
    }
    let negative = x.len() % 2 == 1;
    for (field, row) in fields.iter().zip(acc.iter_mut()) {
        let trees = tree_polynomial_mod(g, weights, &keep, field).expect("connectivity checked");
        let column: Vec<(usize, u64)> = support.iter().map(|&j| (j, field.reduce_big(&column[j]))).collect();
        for (a, &t) in trees.iter().enumerate() {
            if t == 0 {
                continue;
            }
            for &(j, c) in &column {
                let q = a + j;
                if q >= len {
                    break;
                }
                let v = field.mul(t, c);
                row[q] = if negative { field.sub(row[q], v) } else { field.add(row[q], v) };
            }
        }
    }
}

/// n <= 2: the only trees are the empty tree (n <= 1) or a single edge, and
/// every vertex is a leaf, so non-terminals make the instance infeasible.
fn small_case(g: &MultiGraph, weights: &[u64], nt_list: &[Vertex], len: usize) -> WeightCountVector {
    let mut counts = vec![BigUint::zero(); len];
    if nt_list.is_empty() {
        if g.n() <= 1 {
            counts[0] += 1u32;
        } else {
            for &w in weights {
                counts[w as usize] += 1u32;
            }
        }
    }
    WeightCountVector::new(counts)
}

/// Minimum weight admissible spanning tree by counting; the optimum is the
/// smallest q with a positive count.
pub fn solve_by_inclusion_exclusion(inst: &Instance, options: &SolveOptions) -> Result<SolveResult> {
    let (weights, bound) = integral_weights(inst, options.max_weight)?;
    let g = inst.graph();
    let (counts, subsets) = admissible_counts(g, &weights, inst.nt_mask(), bound, options.threads)?;
    let stats = SolveStats { subsets_evaluated: subsets, branches_evaluated: 0 };
    let Some(target) = counts.min_support() else {
        let mut result = SolveResult::infeasible(stats);
        result.counts = Some(counts);
        return Ok(result);
    };
    let tree = if options.witness {
        let tree = reconstruct_witness(inst, &weights, bound, target, options.threads)?;
        debug_assert!(is_admissible_spanning_tree(inst, &tree)?);
        Some(tree)
    } else {
        None
    };
    Ok(SolveResult {
        feasible: true,
        weight: Some(Weight::from_integer(target as u64)),
        tree,
        counts: Some(counts),
        stats,
    })
}

/// Deletes edges one at a time whenever an admissible tree of weight `target`
/// survives the deletion. Afterwards every remaining edge lies in every such
/// tree, so the remaining edges are exactly one tree.
fn reconstruct_witness(inst: &Instance, weights: &[u64], bound: u64, target: usize, threads: usize) -> Result<EdgeSet> {
    let g = inst.graph();
    let nt = inst.nt_mask();
    let mut alive = vec![true; g.m()];
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        if (nt[u] && degree[u] <= 2) || (nt[v] && degree[v] <= 2) || degree[u] <= 1 || degree[v] <= 1 {
            continue;
        }
        alive[e] = false;
        let (sub, sub_weights) = surviving(g, weights, &alive);
        let keep = sub.is_connected()
            && admissible_counts(&sub, &sub_weights, nt, bound, threads)?.0.get(target).map_or(false, |c| !c.is_zero());
        if keep {
            degree[u] -= 1;
            degree[v] -= 1;
        } else {
            alive[e] = true;
        }
    }
    let tree: EdgeSet = (0..g.m()).filter(|&e| alive[e]).collect();
    if !is_admissible_spanning_tree(inst, &tree)? {
        return Err(Error::Precondition("witness reconstruction did not converge to a tree".into()));
    }
    Ok(tree)
}

fn surviving(g: &MultiGraph, weights: &[u64], alive: &[bool]) -> (MultiGraph, Vec<u64>) {
    let mut sub = MultiGraph::empty(g.n());
    let mut w = Vec::new();
    for e in (0..g.m()).filter(|&e| alive[e]) {
        let (a, b) = g.edge(e);
        sub.push_edge(a, b);
        w.push(weights[e]);
    }
    (sub, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn small_counts(inst: &Instance) -> Vec<u64> {
        count_admissible_trees_by_weight(inst, None)
            .unwrap()
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn k4_one_non_terminal() {
        // 16 trees of K4 minus the 9 with v as a leaf (3 attachments x 3 trees of K3).
        let inst = Instance::unweighted(MultiGraph::complete(4), [0]).unwrap();
        assert_eq!(small_counts(&inst), vec![0, 0, 0, 7]);
    }

    #[test]
    fn c4_all_non_terminal_is_zero() {
        let inst = Instance::unweighted(MultiGraph::cycle(4), 0..4).unwrap();
        assert!(small_counts(&inst).iter().all(|&c| c == 0));
    }

    #[test]
    fn empty_nt_matches_plain_counts() {
        let g = MultiGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)]).unwrap();
        let w = vec![1, 2, 3, 1, 2, 3, 1];
        let weights = w.iter().map(|&x| Weight::from_integer(x)).collect();
        let inst = Instance::new(g.clone(), [], Some(weights)).unwrap();
        let plain = crate::counting::count_spanning_trees_by_weight(&g, &w, 3).unwrap();
        assert_eq!(count_admissible_trees_by_weight(&inst, None).unwrap(), plain);
    }

    #[test]
    fn solves_p3_with_weights() {
        let weights = Some(vec![Weight::from_integer(2), Weight::from_integer(3)]);
        let inst = Instance::new(MultiGraph::path(3), [1], weights).unwrap();
        let r = solve_by_inclusion_exclusion(&inst, &SolveOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weight, Some(Weight::from_integer(5)));
        assert_eq!(r.tree, Some(EdgeSet::from([0, 1])));
        assert_eq!(r.stats.subsets_evaluated, 2);
    }

    #[test]
    fn k4_witness_is_admissible() {
        let inst = Instance::unweighted(MultiGraph::complete(4), [2]).unwrap();
        let r = solve_by_inclusion_exclusion(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.weight, Some(Weight::from_integer(3)));
        assert!(is_admissible_spanning_tree(&inst, r.tree.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn c5_three_consecutive_nt() {
        // Only the path missing the edge opposite the middle block works: 1 tree.
        let inst = Instance::unweighted(MultiGraph::cycle(5), [0, 1, 2]).unwrap();
        let counts = small_counts(&inst);
        assert_eq!(counts[4], 1);
        let r = solve_by_inclusion_exclusion(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.weight, Some(Weight::from_integer(4)));
    }

    #[test]
    fn rejects_rational_weights() {
        let weights = Some(vec![Weight::ratio(1, 2).unwrap(), Weight::one()]);
        let inst = Instance::new(MultiGraph::path(3), [1], weights).unwrap();
        assert!(matches!(
            solve_by_inclusion_exclusion(&inst, &SolveOptions::default()),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn tiny_graphs() {
        let inst = Instance::unweighted(MultiGraph::path(2), []).unwrap();
        assert_eq!(small_counts(&inst), vec![0, 1]);
        let inst = Instance::unweighted(MultiGraph::path(2), [0]).unwrap();
        assert_eq!(small_counts(&inst), vec![0, 0]);
    }

    #[test]
    fn threaded_matches_sequential() {
        let g = MultiGraph::complete(6);
        let w: Vec<Weight> = (0..g.m()).map(|e| Weight::from_integer(1 + (e as u64 * 7) % 3)).collect();
        let inst = Instance::new(g, [0, 2, 4], Some(w)).unwrap();
        let seq = solve_by_inclusion_exclusion(&inst, &SolveOptions { threads: 1, witness: false, max_weight: None }).unwrap();
        let par = solve_by_inclusion_exclusion(&inst, &SolveOptions { threads: 4, witness: false, max_weight: None }).unwrap();
        assert_eq!(seq, par);
    }
}
