use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{extend_forest_to_spanning_tree, is_admissible_spanning_tree, EdgeId, EdgeSet, Instance, MultiGraph, Vertex};

/// One reduction. Vertex and edge ids refer to the instance the step is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ReductionStep {
    /// Deletes `removed` (everything outside `N[V_NT]`) and appends a root
    /// adjacent to `root_neighbors` (`N(V_NT)`).
    #[serde(rename_all = "camelCase")]
    ClosedNeighborhood { removed: Vec<Vertex>, root_neighbors: Vec<Vertex> },
    /// Deletes `y`, joins `root` to every vertex of `x` and drops `x` from the
    /// non-terminals. `matching` is the 2-expansion of `x` into `y`.
    Expansion { rule: ExpansionRule, x: Vec<Vertex>, y: Vec<Vertex>, matching: Vec<EdgeId>, root: Vertex },
    DeleteEdges { rule: EdgeRule, edges: Vec<EdgeId> },
    /// Degree-based rules. `vertices` and `edges` list what the rule touches:
    /// the deleted vertex (then its neighbour) for degree-1 rules, the
    /// contracted or deleted edge otherwise.
    Degree { rule: DegreeRule, vertices: Vec<Vertex>, edges: Vec<EdgeId> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExpansionRule {
    /// Expansion of `V_NT` into `N(V_NT)`.
    NonTerminals,
    /// Expansion of `V_NT ∩ S` into `N(V_NT) ∩ I` for a vertex cover `S`.
    VertexCover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EdgeRule {
    /// Edges with both ends in `N(V_NT)`.
    NeighborhoodEdges,
    /// All but the first of each bundle of parallel edges.
    CollapseParallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DegreeRule {
    Deg1Drop,
    Deg1RelaxNt,
    ContractNtNtDeg2,
    DeleteNonNtDeg2Edge,
    ContractBridgeDeg2,
    ContractFourConsecutive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// Instance after a step, with the source of each new edge and vertex
/// (`None` for a new root and its edges; a contracted vertex maps to the
/// smaller endpoint).
#[derive(Clone, Debug)]
pub struct Applied {
    pub instance: Instance,
    pub edge_origin: Vec<Option<EdgeId>>,
    pub vertex_origin: Vec<Option<Vertex>>,
}

fn identity(n: usize) -> Vec<Option<usize>> {
    (0..n).map(Some).collect()
}

type Deleted = (Instance, Vec<Option<EdgeId>>, Vec<Option<Vertex>>, Vec<Option<Vertex>>);

/// Returns the smaller instance, edge origins, vertex origins and the old-to-new vertex map.
fn delete_vertices(inst: &Instance, remove: &[Vertex]) -> Result<Deleted> {
    let g = inst.graph();
    let mut keep = vec![true; g.n()];
    for &v in remove {
        g.check_vertex(v)?;
        keep[v] = false;
    }
    let sub = g.induced_subgraph(&keep);
    let nt = sub.vertex_origin.iter().map(|&v| inst.is_nt(v)).collect();
    let origin = sub.edge_origin.iter().map(|&e| Some(e)).collect();
    let vertex_origin = sub.vertex_origin.iter().map(|&v| Some(v)).collect();
    Ok((Instance::from_parts(sub.graph, nt, None), origin, vertex_origin, sub.vertex_map))
}

fn contract(inst: &Instance, e: EdgeId, merged_nt: bool) -> Result<Applied> {
    let g = inst.graph();
    g.check_edge(e)?;
    let c = g.contract_edges(&EdgeSet::from([e]))?;
    let mut nt = vec![false; c.graph.n()];
    for v in 0..g.n() {
        nt[c.vertex_map[v]] |= inst.is_nt(v);
    }
    let (a, b) = g.edge(e);
    nt[c.vertex_map[a]] = merged_nt || (inst.is_nt(a) && inst.is_nt(b));
    let mut edge_origin = vec![None; c.graph.m()];
    for (old, new) in c.edge_map.iter().enumerate() {
        if let Some(new) = new {
            edge_origin[*new] = Some(old);
        }
    }
    let mut vertex_origin = vec![None; c.graph.n()];
    for v in (0..g.n()).rev() {
        vertex_origin[c.vertex_map[v]] = Some(v);
    }
    Ok(Applied { instance: Instance::from_parts(c.graph, nt, None), edge_origin, vertex_origin })
}

fn first(items: &[usize], what: &str) -> Result<usize> {
    items.first().copied().ok_or_else(|| Error::Precondition(format!("step is missing its {what}")))
}

/// Applies `step` to the unweighted view of `inst`.
pub fn apply_step(inst: &Instance, step: &ReductionStep) -> Result<Applied> {
    let g = inst.graph();
    match step {
        ReductionStep::ClosedNeighborhood { removed, root_neighbors } => {
            let (mut next, edge_origin, mut vertex_origin, vertex_map) = delete_vertices(inst, removed)?;
            let (mut graph, mut nt) = (next.graph().clone(), next.nt_mask().to_vec());
            let root = graph.push_vertex();
            nt.push(false);
            vertex_origin.push(None);
            let mut edge_origin = edge_origin;
            for &v in root_neighbors {
                g.check_vertex(v)?;
                let mapped = vertex_map[v].ok_or_else(|| Error::Precondition(format!("root neighbour {v} was removed")))?;
                graph.push_edge(root, mapped);
                edge_origin.push(None);
            }
            next = Instance::from_parts(graph, nt, None);
            Ok(Applied { instance: next, edge_origin, vertex_origin })
        }
        ReductionStep::Expansion { x, y, root, .. } => {
            let (next, mut edge_origin, vertex_origin, vertex_map) = delete_vertices(inst, y)?;
            let (mut graph, mut nt) = (next.graph().clone(), next.nt_mask().to_vec());
            let lost = || Error::Precondition("expansion deletes its own root or X".into());
            let root = vertex_map.get(*root).copied().flatten().ok_or_else(lost)?;
            for &v in x {
                let v = vertex_map.get(v).copied().flatten().ok_or_else(lost)?;
                graph.push_edge(root, v);
                edge_origin.push(None);
                nt[v] = false;
            }
            Ok(Applied { instance: Instance::from_parts(graph, nt, None), edge_origin, vertex_origin })
        }
        ReductionStep::DeleteEdges { edges, .. } | ReductionStep::Degree { rule: DegreeRule::DeleteNonNtDeg2Edge, edges, .. } => {
            for &e in edges {
                g.check_edge(e)?;
            }
            let sub = g.without_edges(&edges.iter().copied().collect());
            let edge_origin = sub.edge_origin.iter().map(|&e| Some(e)).collect();
            Ok(Applied {
                instance: Instance::from_parts(sub.graph, inst.nt_mask().to_vec(), None),
                edge_origin,
                vertex_origin: identity(g.n()),
            })
        }
        ReductionStep::Degree { rule, vertices, edges } => match rule {
            DegreeRule::Deg1Drop | DegreeRule::Deg1RelaxNt => {
                let v = first(vertices, "vertex")?;
                let (next, edge_origin, vertex_origin, vertex_map) = delete_vertices(inst, &[v])?;
                if *rule == DegreeRule::Deg1Drop {
                    return Ok(Applied { instance: next, edge_origin, vertex_origin });
                }
                let u = *vertices.get(1).ok_or_else(|| Error::Precondition("degree-1 step is missing the neighbour".into()))?;
                let u = vertex_map.get(u).copied().flatten().ok_or_else(|| Error::Precondition("neighbour was removed".into()))?;
                let mut nt = next.nt_mask().to_vec();
                nt[u] = false;
                Ok(Applied { instance: Instance::from_parts(next.graph().clone(), nt, None), edge_origin, vertex_origin })
            }
            DegreeRule::ContractNtNtDeg2 | DegreeRule::ContractFourConsecutive => contract(inst, first(edges, "edge")?, true),
            DegreeRule::ContractBridgeDeg2 => contract(inst, first(edges, "edge")?, false),
            DegreeRule::DeleteNonNtDeg2Edge => unreachable!("handled with DeleteEdges"),
        },
    }
}

/// Every intermediate instance, starting with the unweighted original.
pub fn replay(original: &Instance, trace: &ReductionTrace) -> Result<Vec<Applied>> {
    let mut states = vec![Applied {
        instance: original.without_weights(),
        edge_origin: identity(original.graph().m()),
        vertex_origin: identity(original.n()),
    }];
    for step in &trace.steps {
        let next = apply_step(&states.last().expect("nonempty").instance, step)?;
        states.push(next);
    }
    Ok(states)
}

/// Edges a step forces back into the tree when undoing it.
fn forced_edges(step: &ReductionStep) -> &[EdgeId] {
    match step {
        ReductionStep::Expansion { matching, .. } => matching,
        ReductionStep::Degree { rule: DegreeRule::DeleteNonNtDeg2Edge, .. } => &[],
        ReductionStep::Degree { edges, .. } => edges,
        _ => &[],
    }
}

/// Turns an admissible spanning tree of the kernel into one of `original`.
pub fn lift_solution(original: &Instance, trace: &ReductionTrace, kernel_tree: &EdgeSet) -> Result<EdgeSet> {
    let states = replay(original, trace)?;
    let kernel = &states.last().expect("nonempty").instance;
    if !is_admissible_spanning_tree(kernel, kernel_tree)? {
        return Err(Error::Precondition("tree is not an admissible spanning tree of the kernel".into()));
    }
    let mut tree = kernel_tree.clone();
    for (i, step) in trace.steps.iter().enumerate().rev() {
        let after = &states[i + 1];
        let before: &MultiGraph = states[i].instance.graph();
        let mut forest: EdgeSet = tree.iter().filter_map(|&e| after.edge_origin[e]).collect();
        forest.extend(forced_edges(step).iter().copied());
        tree = extend_forest_to_spanning_tree(before, &forest)?;
    }
    Ok(tree)
}
