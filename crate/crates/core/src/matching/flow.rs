//! Min-cost flow by successive shortest paths with Johnson potentials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Weight};

use super::Sense;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    cost: Weight,
}

/// Residual network; arc `2i` is forward and `2i + 1` its reverse.
#[derive(Debug, Clone)]
pub struct MinCostFlow {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl MinCostFlow {
    pub fn new(n: usize) -> Self {
        MinCostFlow {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    /// Adds an arc with non-negative cost and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: Weight) -> usize {
        debug_assert!(cost >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently on forward arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id + 1].cap
    }

    /// Pushes up to `limit` units from `s` to `t` at minimum cost. Returns
    /// `(flow, cost)`.
    pub fn run(&mut self, s: usize, t: usize, limit: i64) -> (i64, Weight) {
        let n = self.n;
        let mut potential = vec![0 as Weight; n];
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![Weight::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0, s)));
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > dist[v] {
                    continue;
                }
                for &id in &self.out[v] {
                    let a = &self.arcs[id];
                    if a.cap == 0 {
                        continue;
                    }
                    let nd = d + a.cost + potential[v] - potential[a.to];
                    if nd < dist[a.to] {
                        dist[a.to] = nd;
                        via[a.to] = id;
                        heap.push(Reverse((nd, a.to)));
                    }
                }
            }
            if dist[t] == Weight::MAX {
                break;
            }
            for v in 0..n {
                if dist[v] != Weight::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let id = via[v];
                push = push.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let id = via[v];
                self.arcs[id].cap -= push;
                self.arcs[id ^ 1].cap += push;
                cost += push * self.arcs[id].cost;
                v = self.arcs[id ^ 1].to;
            }
            flow += push;
        }
        (flow, cost)
    }
}

/// Minimum-cost loopless `d`-regular bipartite selection: each row `i`
/// picks `d` distinct columns `j != i`, each column is picked `d` times.
/// Costs must be non-negative.
pub(crate) fn regular_selection(n: usize, d: usize, cost: impl Fn(usize, usize) -> Weight) -> Result<Vec<Edge>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    if d > n.saturating_sub(1) {
        return Err(Error::DegreeTooLarge { n, d });
    }
    let (s, t) = (2 * n, 2 * n + 1);
    let mut g = MinCostFlow::new(2 * n + 2);
    for i in 0..n {
        g.add_arc(s, i, d as i64, 0);
        g.add_arc(n + i, t, d as i64, 0);
    }
    let mut ids = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                ids.push((g.add_arc(i, n + j, 1, cost(i, j)), i, j));
            }
        }
    }
    let (flow, _) = g.run(s, t, (n * d) as i64);
    if flow != (n * d) as i64 {
        return Err(Error::Infeasible);
    }
    Ok(ids
        .into_iter()
        .filter(|&(id, _, _)| g.flow(id) == 1)
        .map(|(_, i, j)| (i, j))
        .collect())
}

/// Optimal loopless assignment: `σ(i) != i` for every row. Returns `σ`.
pub fn assignment(costs: &[Vec<Weight>], sense: Sense) -> Result<Vec<usize>> {
    let n = costs.len();
    if costs.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInstance("assignment matrix is not square".into()));
    }
    if n < 2 {
        return Err(Error::Infeasible);
    }
    let off = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let (lo, hi) = off.fold((Weight::MAX, Weight::MIN), |(lo, hi), (i, j)| {
        (lo.min(costs[i][j]), hi.max(costs[i][j]))
    });
    let arcs = match sense {
        Sense::Min => regular_selection(n, 1, |i, j| costs[i][j] - lo)?,
        Sense::Max => regular_selection(n, 1, |i, j| hi - costs[i][j])?,
    };
    let mut sigma = vec![0; n];
    for (i, j) in arcs {
        sigma[i] = j;
    }
    Ok(sigma)
}
