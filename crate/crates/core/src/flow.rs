//! Dinic max-flow with a lower-bound feasibility wrapper.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

pub const INF: i64 = i64::MAX / 4;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.level.push(0);
        self.cursor.push(0);
        self.out.len() - 1
    }

    /// Adds an arc and returns its handle for `flow_on`.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently routed through arc `id` (the residual of its reverse twin).
    pub fn flow_on(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.out[u] {
                let a = &self.arcs[id];
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.out[u].len() {
            let id = self.out[u][self.cursor[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[id].cap -= got;
                    self.arcs[id ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network (source side of a min cut).
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &id in &self.out[u] {
                let a = &self.arcs[id];
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

/// Network whose arcs carry lower and upper bounds. Feasibility of a
/// circulation is decided by the usual super-source reduction.
#[derive(Clone, Debug)]
pub struct BoundedNetwork {
    nodes: usize,
    arcs: Vec<(usize, usize, i64, i64)>,
}

impl BoundedNetwork {
    pub fn new(nodes: usize) -> Self {
        BoundedNetwork { nodes, arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64) {
        self.arcs.push((from, to, lower, upper));
    }

    pub fn has_feasible_circulation(&self) -> bool {
        if self.arcs.iter().any(|&(_, _, lo, hi)| lo > hi || hi < 0) {
            return false;
        }
        let mut net = FlowNetwork::new(self.nodes + 2);
        let (ss, tt) = (self.nodes, self.nodes + 1);
        let mut excess = vec![0i64; self.nodes];
        for &(u, v, lo, hi) in &self.arcs {
            let lo = lo.max(0);
            if hi > lo {
                net.add_arc(u, v, hi - lo);
            }
            excess[v] += lo;
            excess[u] -= lo;
        }
        let mut demand = 0;
        for (v, &ex) in excess.iter().enumerate() {
            if ex > 0 {
                net.add_arc(ss, v, ex);
                demand += ex;
            } else if ex < 0 {
                net.add_arc(v, tt, -ex);
            }
        }
        net.max_flow(ss, tt) == demand
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_max_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 3);
        net.add_arc(0, 2, 2);
        net.add_arc(1, 2, 1);
        net.add_arc(1, 3, 2);
        net.add_arc(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
    }

    #[test]
    fn lower_bounds() {
        // s -> a in [2,2], a -> t in [0,1], t -> s in [0,5]: infeasible
        let mut b = BoundedNetwork::new(3);
        b.add_arc(0, 1, 2, 2);
        b.add_arc(1, 2, 0, 1);
        b.add_arc(2, 0, 0, 5);
        assert!(!b.has_feasible_circulation());
        let mut b = BoundedNetwork::new(3);
        b.add_arc(0, 1, 2, 2);
        b.add_arc(1, 2, 0, 3);
        b.add_arc(2, 0, 0, 5);
        assert!(b.has_feasible_circulation());
    }
}
