use crate::error::Result;
use crate::graph::{EdgeId, Instance, MultiGraph, Vertex};
use crate::kernel::{trivially_infeasible, DegreeRule, EdgeRule, KernelResult, Reducer, ReductionStep, Verdict};

fn parallel_duplicates(g: &MultiGraph) -> Vec<EdgeId> {
    let mut seen = std::collections::BTreeSet::new();
    (0..g.m())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            !seen.insert((u.min(v), u.max(v)))
        })
        .collect()
}

fn other_neighbor(g: &MultiGraph, v: Vertex, not: Vertex) -> Option<Vertex> {
    g.neighbors(v).iter().map(|&(u, _)| u).find(|&u| u != not)
}

/// A degree-2 chain `p q r s` whose membership alternates, oriented so `p`
/// is a non-terminal. Returns the edge `pq`.
fn alternating_chain(inst: &Instance) -> Option<(Vec<Vertex>, EdgeId)> {
    let g = inst.graph();
    let two = |v: Vertex| g.degree(v) == 2;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !two(a) || !two(b) || inst.is_nt(a) == inst.is_nt(b) {
            continue;
        }
        let (p, q) = if inst.is_nt(a) { (a, b) } else { (b, a) };
        let Some(r) = other_neighbor(g, q, p) else { continue };
        if r == p || !two(r) || !inst.is_nt(r) {
            continue;
        }
        let Some(s) = other_neighbor(g, r, q) else { continue };
        if s == q || s == p || !two(s) || inst.is_nt(s) {
            continue;
        }
        return Some((vec![p, q, r, s], e));
    }
    None
}

/// The next applicable degree rule, if any. Assumes a simple graph with no
/// non-terminal of degree at most one.
fn next_rule(inst: &Instance) -> Option<ReductionStep> {
    let g = inst.graph();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        let (u, e) = g.neighbors(v)[0];
        return Some(if inst.is_nt(u) {
            ReductionStep::Degree { rule: DegreeRule::Deg1RelaxNt, vertices: vec![v, u], edges: vec![e] }
        } else {
            ReductionStep::Degree { rule: DegreeRule::Deg1Drop, vertices: vec![v], edges: vec![e] }
        });
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if g.degree(u) != 2 || g.degree(v) != 2 || inst.is_nt(u) != inst.is_nt(v) {
            continue;
        }
        let rule = if inst.is_nt(u) {
            DegreeRule::ContractNtNtDeg2
        } else if g.is_bridge(e) {
            DegreeRule::ContractBridgeDeg2
        } else {
            DegreeRule::DeleteNonNtDeg2Edge
        };
        return Some(ReductionStep::Degree { rule, vertices: vec![u, v], edges: vec![e] });
    }
    alternating_chain(inst).map(|(vertices, e)| ReductionStep::Degree { rule: DegreeRule::ContractFourConsecutive, vertices, edges: vec![e] })
}

/// Whether any degree rule of the max-leaf kernel still applies: a vertex of
/// degree one, two adjacent degree-2 vertices on the same side of `V_NT`, or
/// four consecutive degree-2 vertices.
pub fn has_reducible_degree_pattern(inst: &Instance) -> bool {
    let g = inst.graph();
    if (0..g.n()).any(|v| g.degree(v) == 1) {
        return true;
    }
    if g.edges().iter().any(|&(u, v)| g.degree(u) == 2 && g.degree(v) == 2 && inst.is_nt(u) == inst.is_nt(v)) {
        return true;
    }
    // a degree-2 path on four distinct vertices
    g.edges().iter().any(|&(a, b)| {
        g.degree(a) == 2
            && g.degree(b) == 2
            && other_neighbor(g, b, a).is_some_and(|c| {
                c != a && g.degree(c) == 2 && other_neighbor(g, c, b).is_some_and(|d| d != a && d != b && g.degree(d) == 2)
            })
    })
}

/// Exhaustive degree rules; the kernel is a subdivision of a small graph
/// whose edges are subdivided at most three times.
pub fn kernelize_ml(inst: &Instance) -> Result<KernelResult> {
    let mut r = Reducer::new(inst);
    loop {
        if trivially_infeasible(&r.current) {
            return Ok(r.finish(Verdict::Infeasible));
        }
        let duplicates = parallel_duplicates(r.current.graph());
        if !duplicates.is_empty() {
            r.push(ReductionStep::DeleteEdges { rule: EdgeRule::CollapseParallel, edges: duplicates })?;
            continue;
        }
        match next_rule(&r.current) {
            Some(step) => r.push(step)?,
            None => return Ok(r.reduced_or_unchanged()),
        }
    }
}
