use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Instance, MultiGraph, Vertex, Weight};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Uniform integers in `1..=max`.
    Integer { max: u64 },
    /// Uniform `a/b` with `a` in `1..=max_num`, `b` in `1..=max_den`.
    Rational { max_num: u64, max_den: u64 },
}

/// Seeded `G(n, p)` resampled until connected, with `nt_count` non-terminals
/// chosen uniformly. Deterministic in all arguments.
pub fn random_instance(seed: u64, n: usize, p: f64, nt_count: usize, weights: WeightMode) -> Result<Instance> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Generation(format!("edge probability {p} outside [0, 1]")));
    }
    if nt_count > n.saturating_sub(2) {
        return Err(Error::Generation(format!("{nt_count} non-terminals need at least {} vertices", nt_count + 2)));
    }
    match weights {
        WeightMode::Integer { max: 0 } | WeightMode::Rational { max_num: 0, .. } | WeightMode::Rational { max_den: 0, .. } => {
            return Err(Error::Generation("weight bounds must be positive".into()));
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = (0..MAX_ATTEMPTS)
        .map(|_| {
            let edges: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
            MultiGraph::new(n, edges).expect("vertices in range")
        })
        .find(MultiGraph::is_connected)
        .ok_or_else(|| Error::Generation(format!("no connected G({n}, {p}) in {MAX_ATTEMPTS} attempts")))?;
    let mut nt: Vec<Vertex> = sample(&mut rng, n, nt_count).into_vec();
    nt.sort_unstable();
    let weights = match weights {
        WeightMode::Unit => None,
        WeightMode::Integer { max } => Some((0..graph.m()).map(|_| Weight::from(rng.gen_range(1..=max))).collect()),
        WeightMode::Rational { max_num, max_den } => Some(
            (0..graph.m())
                .map(|_| Weight::ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den)).expect("positive denominator"))
                .collect(),
        ),
    };
    Instance::new(graph, nt, weights)
}

/// `g` plus a false twin `v'` of `v` (adjacent to exactly `N(v)`), with every
/// vertex except `v` and `v'` non-terminal. Feasible iff `g` is Hamiltonian.
pub fn false_twin_ham_instance(g: &MultiGraph, v: Vertex) -> Result<Instance> {
    if g.n() < 3 {
        return Err(Error::Precondition("false-twin construction needs at least 3 vertices".into()));
    }
    if !g.is_simple() {
        return Err(Error::Precondition("false-twin construction needs a simple graph".into()));
    }
    g.check_vertex(v)?;
    let twin = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend(g.neighbors(v).iter().map(|&(u, _)| (u, twin)));
    let graph = MultiGraph::new(g.n() + 1, edges)?;
    Instance::unweighted(graph, (0..g.n()).filter(|&u| u != v))
}

/// Bitmask dynamic programming over paths from vertex 0.
pub fn has_hamiltonian_cycle(g: &MultiGraph) -> bool {
    let n = g.n();
    assert!(n <= 24, "Hamiltonian check is exponential in n");
    if n < 3 {
        return false;
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    // reach[mask] = set of end vertices of paths from 0 covering exactly mask
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1usize..1 << n {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for end in 0..n {
            if reach[mask] >> end & 1 == 1 {
                let mut next = adj[end] & !(mask as u32);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    reach[(1 << n) - 1] & adj[0] != 0
}

pub fn petersen_graph() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    MultiGraph::new(10, edges).expect("valid")
}

/// `K_{1,leaves}` with centre 0.
pub fn star_graph(leaves: usize) -> MultiGraph {
    MultiGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid")
}
