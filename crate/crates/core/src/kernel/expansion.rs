use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};

/// Bipartite graph with sides `0..a` and `0..b`; `edges[i] = (side A, side B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub a: usize,
    pub b: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A q-expansion of `x` into `y`: `matching` holds indices into the edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub matching: Vec<usize>,
}

/// Finds nonempty `X ⊆ A`, `Y ⊆ B` with `N(Y) ⊆ X` and a 2-expansion of `X` into `Y`.
///
/// Saturating every remaining A-vertex twice either succeeds, or the residual
/// graph exposes a set `Z` with `|N(Z)| < 2|Z|`; dropping `Z ∪ N(Z)` keeps the
/// preconditions and we retry.
pub fn find_two_expansion(h: &BipartiteGraph) -> Result<Expansion> {
    if h.a == 0 {
        return Err(Error::Precondition("side A is empty".into()));
    }
    if h.b < 2 * h.a {
        return Err(Error::Precondition(format!("|B| = {} < 2|A| = {}", h.b, 2 * h.a)));
    }
    let mut b_degree = vec![0usize; h.b];
    for &(u, v) in &h.edges {
        if u >= h.a || v >= h.b {
            return Err(Error::Precondition(format!("edge ({u}, {v}) leaves the bipartition")));
        }
        b_degree[v] += 1;
    }
    if let Some(v) = b_degree.iter().position(|&d| d == 0) {
        return Err(Error::Precondition(format!("B-vertex {v} is isolated")));
    }

    let mut alive_a = vec![true; h.a];
    let mut alive_b = vec![true; h.b];
    loop {
        let active: Vec<usize> = (0..h.a).filter(|&u| alive_a[u]).collect();
        let (source, sink) = (h.a + h.b, h.a + h.b + 1);
        let mut net = FlowNetwork::new(h.a + h.b + 2);
        for &u in &active {
            net.add_arc(source, u, 2);
        }
        let mut arcs = Vec::new();
        for (i, &(u, v)) in h.edges.iter().enumerate() {
            if alive_a[u] && alive_b[v] {
                arcs.push((i, net.add_arc(u, h.a + v, INF)));
            }
        }
        for v in (0..h.b).filter(|&v| alive_b[v]) {
            net.add_arc(h.a + v, sink, 1);
        }
        let flow = net.max_flow(source, sink);
        if flow == 2 * active.len() as i64 {
            let matching: Vec<usize> = arcs.iter().filter(|&&(_, arc)| net.flow_on(arc) > 0).map(|&(i, _)| i).collect();
            let mut y: Vec<usize> = matching.iter().map(|&i| h.edges[i].1).collect();
            y.sort_unstable();
            return Ok(Expansion { x: active, y, matching });
        }
        let reach = net.residual_reachable(source);
        let deficient: Vec<usize> = active.iter().copied().filter(|&u| reach[u]).collect();
        debug_assert!(!deficient.is_empty());
        for &u in &deficient {
            alive_a[u] = false;
        }
        for &(u, v) in &h.edges {
            if deficient.contains(&u) {
                alive_b[v] = false;
            }
        }
    }
}

/// Checks the three defining properties of a q-expansion with `N(Y) ⊆ X`.
pub fn is_valid_expansion(h: &BipartiteGraph, exp: &Expansion, q: usize) -> bool {
    if exp.x.is_empty() || exp.y.len() != q * exp.x.len() {
        return false;
    }
    let mut in_x = vec![false; h.a];
    let mut in_y = vec![false; h.b];
    for &u in &exp.x {
        if u >= h.a || std::mem::replace(&mut in_x[u], true) {
            return false;
        }
    }
    for &v in &exp.y {
        if v >= h.b || std::mem::replace(&mut in_y[v], true) {
            return false;
        }
    }
    let mut deg_a = vec![0usize; h.a];
    let mut deg_b = vec![0usize; h.b];
    for &i in &exp.matching {
        let Some(&(u, v)) = h.edges.get(i) else { return false };
        if !in_x[u] || !in_y[v] {
            return false;
        }
        deg_a[u] += 1;
        deg_b[v] += 1;
    }
    exp.x.iter().all(|&u| deg_a[u] == q)
        && exp.y.iter().all(|&v| deg_b[v] == 1)
        && h.edges.iter().all(|&(u, v)| !in_y[v] || in_x[u])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_single_vertex() {
        let h = BipartiteGraph { a: 1, b: 2, edges: vec![(0, 0), (0, 1)] };
        let exp = find_two_expansion(&h).unwrap();
        assert_eq!(exp, Expansion { x: vec![0], y: vec![0, 1], matching: vec![0, 1] });
    }

    #[test]
    fn complete_bipartite() {
        let edges = (0..2).flat_map(|u| (0..4).map(move |v| (u, v))).collect();
        let h = BipartiteGraph { a: 2, b: 4, edges };
        assert!(is_valid_expansion(&h, &find_two_expansion(&h).unwrap(), 2));
    }

    #[test]
    fn isolated_a_vertex_is_dropped() {
        let h = BipartiteGraph { a: 2, b: 4, edges: (0..4).map(|v| (0, v)).collect() };
        let exp = find_two_expansion(&h).unwrap();
        assert!(is_valid_expansion(&h, &exp, 2));
        assert_eq!(exp.x, vec![0]);
    }

    #[test]
    fn deficient_set_is_peeled_off() {
        // a0 and a1 share the single neighbour b0; a2 owns b1..b4
        let h = BipartiteGraph { a: 3, b: 6, edges: vec![(0, 0), (1, 0), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5)] };
        let exp = find_two_expansion(&h).unwrap();
        assert!(is_valid_expansion(&h, &exp, 2));
        assert_eq!(exp.x, vec![2]);
    }

    #[test]
    fn preconditions() {
        assert!(find_two_expansion(&BipartiteGraph { a: 0, b: 2, edges: vec![] }).is_err());
        assert!(find_two_expansion(&BipartiteGraph { a: 1, b: 1, edges: vec![(0, 0)] }).is_err());
        assert!(find_two_expansion(&BipartiteGraph { a: 1, b: 2, edges: vec![(0, 0)] }).is_err());
    }
}
