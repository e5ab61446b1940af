//! Kernelizations for the decision problem, with reduction traces that let a
//! solution of the kernel be lifted back to the input graph.

mod expansion;
mod max_leaf;
mod trace;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Instance, MultiGraph, Vertex};

pub use expansion::{find_two_expansion, is_valid_expansion, BipartiteGraph, Expansion};
pub use max_leaf::{has_reducible_degree_pattern, kernelize_ml};
pub use trace::{apply_step, lift_solution, replay, Applied, DegreeRule, EdgeRule, ExpansionRule, ReductionStep, ReductionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    /// Some reduction rule shrank the instance.
    Reduced,
    /// A rule proved that no admissible spanning tree exists.
    Infeasible,
    /// Only normalization steps applied.
    Unchanged,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum KernelRule {
    K,
    Vc,
    Ml,
}

impl std::str::FromStr for KernelRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(KernelRule::K),
            "vc" => Ok(KernelRule::Vc),
            "ml" => Ok(KernelRule::Ml),
            _ => Err(Error::Precondition(format!("unknown kernel rule {s:?} (expected k, vc or ml)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    /// Unweighted kernel instance; on `Infeasible`, the instance the proof applied to.
    pub kernel: Instance,
    pub trace: ReductionTrace,
    pub verdict: Verdict,
    /// Vertex cover sizes used by the vertex-cover kernel: the 2-approximate
    /// cover of the input and the last cover of the reduced graph.
    pub cover_size: Option<(usize, usize)>,
}

impl KernelResult {
    /// Infeasible verdicts count as "no".
    pub fn is_trivially_infeasible(&self) -> bool {
        self.verdict == Verdict::Infeasible
    }
}

pub fn kernelize(inst: &Instance, rule: KernelRule) -> Result<KernelResult> {
    match rule {
        KernelRule::K => kernelize_k(inst),
        KernelRule::Vc => kernelize_vc(inst),
        KernelRule::Ml => kernelize_ml(inst),
    }
}

/// Applies steps while recording them.
struct Reducer {
    current: Instance,
    trace: ReductionTrace,
    vertex_origin: Vec<Option<Vertex>>,
}

impl Reducer {
    fn new(inst: &Instance) -> Self {
        Reducer { current: inst.without_weights(), trace: ReductionTrace::default(), vertex_origin: (0..inst.n()).map(Some).collect() }
    }

    fn push(&mut self, step: ReductionStep) -> Result<()> {
        let applied = apply_step(&self.current, &step)?;
        self.vertex_origin = applied.vertex_origin.iter().map(|v| v.and_then(|v| self.vertex_origin[v])).collect();
        self.current = applied.instance;
        self.trace.steps.push(step);
        Ok(())
    }

    fn finish(self, verdict: Verdict) -> KernelResult {
        KernelResult { kernel: self.current, trace: self.trace, verdict, cover_size: None }
    }

    fn reduced_or_unchanged(self) -> KernelResult {
        let reduced = self.trace.steps.iter().any(|s| {
            !matches!(
                s,
                ReductionStep::ClosedNeighborhood { .. }
                    | ReductionStep::DeleteEdges { rule: EdgeRule::NeighborhoodEdges | EdgeRule::CollapseParallel, .. }
            )
        });
        self.finish(if reduced { Verdict::Reduced } else { Verdict::Unchanged })
    }
}

/// Infeasibility every kernel checks first: disconnection, more than `n - 2`
/// non-terminals, or a non-terminal of degree at most one.
fn trivially_infeasible(inst: &Instance) -> bool {
    let g = inst.graph();
    let k = inst.nt_count();
    !g.is_connected() || (k > 0 && k + 2 > g.n()) || inst.nt_vertices().iter().any(|&v| g.degree(v) <= 1)
}

fn neighborhood(inst: &Instance) -> BTreeSet<Vertex> {
    let g = inst.graph();
    inst.nt_vertices()
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().map(|&(u, _)| u))
        .filter(|&u| !inst.is_nt(u))
        .collect()
}

fn closed_neighborhood_step(inst: &Instance) -> ReductionStep {
    let open = neighborhood(inst);
    let removed = (0..inst.n()).filter(|&v| !inst.is_nt(v) && !open.contains(&v)).collect();
    ReductionStep::ClosedNeighborhood { removed, root_neighbors: open.into_iter().collect() }
}

/// Keeps `G[N[V_NT]]` and adds a root adjacent to `N(V_NT)`. The root is the
/// last vertex of the result.
pub fn closed_neighborhood_reduce(inst: &Instance) -> Result<(Instance, ReductionTrace)> {
    if !inst.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let mut r = Reducer::new(inst);
    r.push(closed_neighborhood_step(&r.current))?;
    Ok((r.current, r.trace))
}

/// Bipartite graph between `a` and `b` using the edges of `g` that join them.
fn bipartite_between(g: &MultiGraph, a: &[Vertex], b: &[Vertex]) -> (BipartiteGraph, Vec<EdgeId>) {
    let mut index = vec![None; g.n()];
    for (i, &v) in a.iter().enumerate() {
        index[v] = Some((true, i));
    }
    for (i, &v) in b.iter().enumerate() {
        index[v] = Some((false, i));
    }
    let mut edges = Vec::new();
    let mut ids = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match (index[u], index[v]) {
            (Some((true, i)), Some((false, j))) | (Some((false, j)), Some((true, i))) => {
                edges.push((i, j));
                ids.push(e);
            }
            _ => {}
        }
    }
    (BipartiteGraph { a: a.len(), b: b.len(), edges }, ids)
}

fn expansion_step(g: &MultiGraph, a: &[Vertex], b: &[Vertex], rule: ExpansionRule, root: Vertex) -> Result<ReductionStep> {
    let (h, ids) = bipartite_between(g, a, b);
    let exp = find_two_expansion(&h)?;
    Ok(ReductionStep::Expansion {
        rule,
        x: exp.x.iter().map(|&i| a[i]).collect(),
        y: exp.y.iter().map(|&j| b[j]).collect(),
        matching: exp.matching.iter().map(|&i| ids[i]).collect(),
        root,
    })
}

/// At most `max(3k, 1)` vertices with at most `k` non-terminals.
pub fn kernelize_k(inst: &Instance) -> Result<KernelResult> {
    let mut r = Reducer::new(inst);
    if trivially_infeasible(&r.current) {
        return Ok(r.finish(Verdict::Infeasible));
    }
    r.push(closed_neighborhood_step(&r.current))?;
    loop {
        let k = r.current.nt_count();
        let n = r.current.n();
        if k == 0 || n <= 3 * k {
            break;
        }
        let a = r.current.nt_vertices();
        let b: Vec<Vertex> = neighborhood(&r.current).into_iter().collect();
        let step = expansion_step(r.current.graph(), &a, &b, ExpansionRule::NonTerminals, n - 1)?;
        r.push(step)?;
        r.push(closed_neighborhood_step(&r.current))?;
    }
    Ok(r.reduced_or_unchanged())
}

/// Greedy maximal matching cover, then drop vertices whose neighbours are all covered.
fn two_approximate_cover(g: &MultiGraph) -> Vec<bool> {
    let mut cover = vec![false; g.n()];
    for &(u, v) in g.edges() {
        if !cover[u] && !cover[v] {
            cover[u] = true;
            cover[v] = true;
        }
    }
    for v in 0..g.n() {
        if cover[v] && g.neighbors(v).iter().all(|&(u, _)| cover[u]) {
            cover[v] = false;
        }
    }
    cover
}

/// At most `4|S| + 2` vertices for the 2-approximate vertex cover `S` of the input.
pub fn kernelize_vc(inst: &Instance) -> Result<KernelResult> {
    let mut r = Reducer::new(inst);
    if trivially_infeasible(&r.current) {
        return Ok(r.finish(Verdict::Infeasible));
    }
    let cover = two_approximate_cover(inst.graph());
    let original_cover = cover.iter().filter(|&&c| c).count();
    loop {
        r.push(closed_neighborhood_step(&r.current))?;
        let open = neighborhood(&r.current);
        let inner: Vec<EdgeId> = r.current.graph().edges().iter().enumerate().filter(|(_, (u, v))| open.contains(u) && open.contains(v)).map(|(e, _)| e).collect();
        if !inner.is_empty() {
            r.push(ReductionStep::DeleteEdges { rule: EdgeRule::NeighborhoodEdges, edges: inner })?;
        }
        let g = r.current.graph();
        let root = g.n() - 1;
        let in_s: Vec<bool> = (0..g.n()).map(|v| v == root || r.vertex_origin[v].is_some_and(|o| cover[o])).collect();
        let s_size = in_s.iter().filter(|&&b| b).count();
        let nt = r.current.nt_vertices();
        let nt_independent = nt.iter().filter(|&&v| !in_s[v]).count();
        if nt_independent >= s_size {
            let mut res = r.finish(Verdict::Infeasible);
            res.cover_size = Some((original_cover, s_size));
            return Ok(res);
        }
        let a: Vec<Vertex> = nt.iter().copied().filter(|&v| in_s[v]).collect();
        let b: Vec<Vertex> = open.iter().copied().filter(|&v| !in_s[v]).collect();
        if a.is_empty() || 2 * a.len() > b.len() {
            let mut res = r.reduced_or_unchanged();
            res.cover_size = Some((original_cover, s_size));
            return Ok(res);
        }
        let step = expansion_step(g, &a, &b, ExpansionRule::VertexCover, root)?;
        r.push(step)?;
    }
}

#[cfg(test)]
mod tests;
