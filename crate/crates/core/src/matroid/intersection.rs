use std::collections::VecDeque;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, MultiGraph, Vertex, Weight};
use crate::matroid::{GraphicMatroid, PartitionMatroid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonBaseResult {
    pub feasible: bool,
    pub base: EdgeSet,
    /// Zero when infeasible.
    pub weight: Weight,
}

/// Minimum-weight set that is a spanning tree of the host and a base of the
/// partition matroid. The partition rank must equal `n(host) - 1`.
pub fn min_weight_common_base(m1: &GraphicMatroid, m2: &PartitionMatroid, w: &[Weight]) -> Result<CommonBaseResult> {
    let m = m1.ground_size();
    if m2.ground_size() != m || w.len() != m {
        return Err(Error::Precondition(format!(
            "ground sets differ: graphic {m}, partition {}, weights {}",
            m2.ground_size(),
            w.len()
        )));
    }
    let target = m1.host().n().saturating_sub(1);
    if m2.rank() != target {
        return Err(Error::Precondition(format!("partition rank {} but spanning trees have {target} edges", m2.rank())));
    }
    Ok(match ScaledCosts::new(w).common_base(m1.host(), m2) {
        Some(base) => {
            let weight = base.iter().map(|&e| &w[e]).sum();
            CommonBaseResult { feasible: true, base, weight }
        }
        None => CommonBaseResult { feasible: false, base: EdgeSet::new(), weight: Weight::zero() },
    })
}

/// Weights multiplied by the lcm of their denominators. Machine integers when
/// every scaled weight stays below 2^62, big integers otherwise.
#[derive(Clone, Debug)]
pub(crate) enum ScaledCosts {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ScaledCosts {
    pub(crate) fn new(w: &[Weight]) -> Self {
        let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.value().denom()));
        let scaled: Vec<BigInt> = w.iter().map(|x| x.value().numer() * (&lcm / x.value().denom())).collect();
        let limit = BigInt::from(1u64 << 62);
        if scaled.iter().all(|c| c < &limit) {
            ScaledCosts::Small(scaled.iter().map(|c| c.to_i128().expect("below 2^62")).collect())
        } else {
            ScaledCosts::Big(scaled)
        }
    }

    /// Costs of the elements listed in `origin`, in that order.
    pub(crate) fn select(&self, origin: &[usize]) -> Self {
        match self {
            ScaledCosts::Small(c) => ScaledCosts::Small(origin.iter().map(|&e| c[e]).collect()),
            ScaledCosts::Big(c) => ScaledCosts::Big(origin.iter().map(|&e| c[e].clone()).collect()),
        }
    }

    pub(crate) fn common_base(&self, host: &MultiGraph, pm: &PartitionMatroid) -> Option<EdgeSet> {
        match self {
            ScaledCosts::Small(c) => augment(host, pm, c),
            ScaledCosts::Big(c) => augment(host, pm, c),
        }
    }
}

trait Cost: Clone + Ord + Zero + Add<Output = Self> + Neg<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Neg<Output = T>> Cost for T {}

/// Rooted spanning forest of the current independent set, used to read off
/// fundamental cycles.
struct Forest {
    comp: Vec<usize>,
    depth: Vec<usize>,
    parent: Vec<Option<(Vertex, usize)>>,
}

impl Forest {
    fn new(host: &MultiGraph, in_set: &[bool]) -> Self {
        let n = host.n();
        let mut forest = Forest { comp: vec![usize::MAX; n], depth: vec![0; n], parent: vec![None; n] };
        let mut queue = VecDeque::new();
        for root in 0..n {
            if forest.comp[root] != usize::MAX {
                continue;
            }
            forest.comp[root] = root;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(v, e) in host.neighbors(u) {
                    if in_set[e] && forest.comp[v] == usize::MAX {
                        forest.comp[v] = root;
                        forest.depth[v] = forest.depth[u] + 1;
                        forest.parent[v] = Some((u, e));
                        queue.push_back(v);
                    }
                }
            }
        }
        forest
    }

    /// Edges on the forest path between `a` and `b`, or `None` if they lie in
    /// different trees.
    fn path(&self, mut a: Vertex, mut b: Vertex) -> Option<Vec<usize>> {
        if self.comp[a] != self.comp[b] {
            return None;
        }
        let mut edges = Vec::new();
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (up, e) = self.parent[a].expect("non-root has a parent");
            edges.push(e);
            a = up;
        }
        Some(edges)
    }
}

/// Block occupancy of the current independent set with the running sums the
/// closed-form extension test needs, so each exchange query is O(1).
struct Occupancy<'a> {
    pm: &'a PartitionMatroid,
    counts: Vec<usize>,
    need: usize,
    remaining: usize,
    room: usize,
}

impl<'a> Occupancy<'a> {
    fn new(pm: &'a PartitionMatroid, in_set: &[bool]) -> Self {
        let mut counts = vec![0; pm.blocks().len()];
        for (e, _) in in_set.iter().enumerate().filter(|(_, &b)| b) {
            counts[pm.block_of(e)] += 1;
        }
        let size: usize = counts.iter().sum();
        let need = counts.iter().enumerate().map(|(i, &c)| pm.lower(i).saturating_sub(c)).sum();
        let room = counts.iter().enumerate().map(|(i, &c)| pm.cap(i) - c).sum();
        Occupancy { pm, counts, need, remaining: pm.rank() - size, room }
    }

    fn can_add(&self, x: usize) -> bool {
        let b = self.pm.block_of(x);
        let c = self.counts[b];
        if self.remaining == 0 || c >= self.pm.cap(b) {
            return false;
        }
        let need = self.need - usize::from(c < self.pm.lower(b));
        need < self.remaining && self.remaining <= self.room
    }

    fn can_swap(&self, y: usize, x: usize) -> bool {
        let (by, bx) = (self.pm.block_of(y), self.pm.block_of(x));
        if by == bx {
            return true;
        }
        let cx = self.counts[bx];
        if cx >= self.pm.cap(bx) {
            return false;
        }
        let need = self.need - usize::from(cx < self.pm.lower(bx)) + usize::from(self.counts[by] <= self.pm.lower(by));
        need <= self.remaining
    }
}

/// Primal weighted matroid intersection: grow a min-weight common independent
/// set one element at a time along lexicographically shortest (cost, hops)
/// paths in the exchange graph.
fn augment<C: Cost>(host: &MultiGraph, pm: &PartitionMatroid, cost: &[C]) -> Option<EdgeSet> {
    let m = host.m();
    let mut in_set = vec![false; m];
    for _ in 0..pm.rank() {
        let forest = Forest::new(host, &in_set);
        let occupancy = Occupancy::new(pm, &in_set);
        let members: Vec<usize> = (0..m).filter(|&e| in_set[e]).collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut sources = Vec::new();
        let mut is_sink = vec![false; m];
        for x in (0..m).filter(|&x| !in_set[x]) {
            let (a, b) = host.edge(x);
            match forest.path(a, b) {
                None => {
                    sources.push(x);
                    for &y in &members {
                        out[y].push(x);
                    }
                }
                Some(cycle) => {
                    for y in cycle {
                        out[y].push(x);
                    }
                }
            }
            is_sink[x] = occupancy.can_add(x);
            out[x].extend(members.iter().copied().filter(|&y| occupancy.can_swap(y, x)));
        }

        let node_cost = |v: usize| if in_set[v] { -cost[v].clone() } else { cost[v].clone() };
        let mut dist: Vec<Option<(C, usize)>> = vec![None; m];
        let mut pred = vec![usize::MAX; m];
        let mut queued = vec![false; m];
        let mut pops = vec![0usize; m];
        let mut queue = VecDeque::new();
        for &x in &sources {
            dist[x] = Some((cost[x].clone(), 0));
            queued[x] = true;
            queue.push_back(x);
        }
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            pops[u] += 1;
            assert!(pops[u] <= m + 1, "negative cycle in exchange graph");
            let (du, hu) = dist[u].clone().expect("queued nodes are labelled");
            for &v in &out[u] {
                let candidate = (du.clone() + node_cost(v), hu + 1);
                if dist[v].as_ref().is_none_or(|d| candidate < *d) {
                    dist[v] = Some(candidate);
                    pred[v] = u;
                    if !queued[v] {
                        queued[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }

        let (_, mut v) = (0..m).filter(|&x| is_sink[x]).filter_map(|x| dist[x].clone().map(|d| (d, x))).min()?;
        loop {
            in_set[v] = !in_set[v];
            if pred[v] == usize::MAX {
                break;
            }
            v = pred[v];
        }
    }
    Some((0..m).filter(|&e| in_set[e]).collect())
}
