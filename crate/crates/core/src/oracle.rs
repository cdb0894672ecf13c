//! Exponential-time exact solvers for small instances.
//!
//! Undirected searches fix vertices in index order: vertex `v` picks its
//! missing edges among later vertices, so once `v` is done its degree is
//! final. A first pass explores cheapest choices first to find the optimal
//! weight; a second pass walks choices in index order and stops at the
//! first optimum, which is the lexicographically smallest optimal edge set.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::decomposition::bridges;
use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, SparseGraph, Subgraph, Weight};
use crate::matching::Sense;

#[derive(Debug, Clone)]
pub struct OracleLimits {
    pub max_connected: usize,
    pub max_two_edge_connected: usize,
    pub max_tour: usize,
    pub max_matching: usize,
    pub max_directed: usize,
    /// Soft cap per call, checked between batches of search nodes.
    pub time_budget: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_connected: 10,
            max_two_edge_connected: 10,
            max_tour: 16,
            max_matching: 12,
            max_directed: 8,
            time_budget: None,
            cancel: None,
        }
    }
}

/// Connectivity requirement on an exact undirected factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnClass {
    Factor,
    Connected,
    TwoEdgeConnected,
}

struct Ticker {
    nodes: u64,
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Ticker {
    fn new(limits: &OracleLimits) -> Self {
        Ticker {
            nodes: 0,
            deadline: limits.time_budget.map(|b| Instant::now() + b),
            cancel: limits.cancel.clone(),
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 4096 == 1 {
            if self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed)) {
                return Err(Error::Cancelled);
            }
            if self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(Error::Cancelled);
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Improve,
    Equal(Weight),
    First,
}

struct Undirected<'a> {
    n: usize,
    d: usize,
    w: &'a dyn Fn(usize, usize) -> Weight,
    allowed: Vec<u32>,
    class: ConnClass,
    deg: Vec<usize>,
    adj: Vec<u32>,
    chosen: Vec<Edge>,
    weight: Weight,
    mode: Mode,
    cheapest_first: bool,
    best: Option<(Weight, Vec<Edge>)>,
    done: bool,
    ticker: Ticker,
}

impl Undirected<'_> {
    fn mask_components(&self, adj: &[u32]) -> usize {
        let n = self.n;
        let mut seen = 0u32;
        let mut count = 0;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u32 << s;
            seen |= frontier;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[x] & !seen;
                seen |= new;
                frontier |= new;
            }
        }
        count
    }

    fn available(&self, v: usize, from: usize, x: usize) -> bool {
        x >= from && x != v && self.allowed[v] >> x & 1 == 1 && self.adj[v] >> x & 1 == 0 && self.deg[x] < self.d
    }

    /// Checks feasibility and returns a lower bound on the final weight,
    /// when vertices `< v` are finished.
    fn bound(&self, v: usize) -> Option<Weight> {
        let (n, d) = (self.n, self.d);
        let mut extra = 0;
        let mut optimistic = self.adj.clone();
        let mut costs = Vec::with_capacity(n);
        for u in v..n {
            let need = d - self.deg[u];
            costs.clear();
            for x in v..n {
                if self.available(u, v, x) {
                    costs.push((self.w)(u, x));
                    optimistic[u] |= 1 << x;
                }
            }
            if costs.len() < need {
                return None;
            }
            if need > 0 && self.mode != Mode::First {
                costs.sort_unstable();
                extra += costs[..need].iter().sum::<Weight>();
            }
        }
        if self.class != ConnClass::Factor && self.mask_components(&optimistic) > 1 {
            return None;
        }
        let cheap = self.weight + (extra + 1) / 2;
        if self.mode == Mode::First || self.pruned(cheap) {
            return Some(cheap);
        }
        let flow = self.transport_bound(v)?;
        Some(self.weight + (flow + 1) / 2)
    }

    /// Bipartite relaxation of the remaining degree problem: every open
    /// vertex sends its missing degree to distinct available partners and
    /// receives the same amount. An integral completion pays each edge
    /// twice, so half the optimum bounds the completion from below.
    /// `None` when the relaxation is infeasible.
    fn transport_bound(&self, v: usize) -> Option<Weight> {
        const MAXN: usize = 2 * 32 + 2;
        let verts: Vec<usize> = (v..self.n).filter(|&u| self.deg[u] < self.d).collect();
        let k = verts.len();
        let (s, t) = (2 * k, 2 * k + 1);
        let nodes = 2 * k + 2;
        let mut cap = [[0i32; MAXN]; MAXN];
        let mut cost = [[0 as Weight; MAXN]; MAXN];
        let mut total = 0;
        for (i, &u) in verts.iter().enumerate() {
            let need = (self.d - self.deg[u]) as i32;
            total += need;
            cap[s][i] = need;
            cap[k + i][t] = need;
            for (j, &x) in verts.iter().enumerate() {
                if self.available(u, v, x) {
                    let c = (self.w)(u, x);
                    cap[i][k + j] = 1;
                    cost[i][k + j] = c;
                    cost[k + j][i] = -c;
                }
            }
        }
        let mut pot = [0 as Weight; MAXN];
        let mut flow = 0;
        let mut result: Weight = 0;
        while flow < total {
            let mut dist = [Weight::MAX; MAXN];
            let mut prev = [usize::MAX; MAXN];
            let mut done = [false; MAXN];
            dist[s] = 0;
            loop {
                let mut x = usize::MAX;
                for y in 0..nodes {
                    if !done[y] && dist[y] != Weight::MAX && (x == usize::MAX || dist[y] < dist[x]) {
                        x = y;
                    }
                }
                if x == usize::MAX {
                    break;
                }
                done[x] = true;
                for y in 0..nodes {
                    if cap[x][y] > 0 && !done[y] {
                        let nd = dist[x] + cost[x][y] + pot[x] - pot[y];
                        if nd < dist[y] {
                            dist[y] = nd;
                            prev[y] = x;
                        }
                    }
                }
            }
            if dist[t] == Weight::MAX {
                return None;
            }
            for y in 0..nodes {
                if dist[y] != Weight::MAX {
                    pot[y] += dist[y];
                }
            }
            let mut push = i32::MAX;
            let mut y = t;
            while y != s {
                let x = prev[y];
                push = push.min(cap[x][y]);
                y = x;
            }
            let mut y = t;
            while y != s {
                let x = prev[y];
                cap[x][y] -= push;
                cap[y][x] += push;
                result += Weight::from(push) * cost[x][y];
                y = x;
            }
            flow += push;
        }
        Some(result)
    }

    fn pruned(&self, lb: Weight) -> bool {
        match (self.mode, &self.best) {
            (Mode::Improve, Some((b, _))) => lb >= *b,
            (Mode::Equal(opt), _) => lb > opt,
            _ => false,
        }
    }

    fn leaf(&mut self) {
        match self.class {
            ConnClass::Factor => {}
            ConnClass::Connected => {
                if self.mask_components(&self.adj) != 1 {
                    return;
                }
            }
            ConnClass::TwoEdgeConnected => {
                if self.mask_components(&self.adj) != 1 {
                    return;
                }
                let lists: Vec<Vec<usize>> = (0..self.n)
                    .map(|u| (0..self.n).filter(|&x| self.adj[u] >> x & 1 == 1).collect())
                    .collect();
                if !bridges(&lists).is_empty() {
                    return;
                }
            }
        }
        match self.mode {
            Mode::Improve => {
                if self.best.as_ref().is_none_or(|(b, _)| self.weight < *b) {
                    self.best = Some((self.weight, self.chosen.clone()));
                }
            }
            Mode::Equal(opt) => {
                if self.weight == opt {
                    self.best = Some((self.weight, self.chosen.clone()));
                    self.done = true;
                }
            }
            Mode::First => {
                self.best = Some((self.weight, self.chosen.clone()));
                self.done = true;
            }
        }
    }

    fn visit(&mut self, v: usize) -> Result<()> {
        self.ticker.tick()?;
        if v == self.n {
            self.leaf();
            return Ok(());
        }
        let Some(lb) = self.bound(v) else { return Ok(()) };
        if self.pruned(lb) {
            return Ok(());
        }
        let need = self.d - self.deg[v];
        if need == 0 {
            return self.visit(v + 1);
        }
        let mut cands: Vec<usize> = (v + 1..self.n).filter(|&x| self.available(v, v, x)).collect();
        if self.cheapest_first {
            cands.sort_by_key(|&x| ((self.w)(v, x), x));
        }
        self.pick(v, &cands, 0, need)
    }

    fn pick(&mut self, v: usize, cands: &[usize], start: usize, need: usize) -> Result<()> {
        if need == 0 {
            return self.visit(v + 1);
        }
        for i in start..=cands.len() - need {
            let x = cands[i];
            let c = (self.w)(v, x);
            self.adj[v] |= 1 << x;
            self.adj[x] |= 1 << v;
            self.deg[v] += 1;
            self.deg[x] += 1;
            self.weight += c;
            self.chosen.push((v, x));
            let r = self.pick(v, cands, i + 1, need - 1);
            self.chosen.pop();
            self.weight -= c;
            self.deg[v] -= 1;
            self.deg[x] -= 1;
            self.adj[v] &= !(1 << x);
            self.adj[x] &= !(1 << v);
            r?;
            if self.done {
                break;
            }
        }
        Ok(())
    }
}

fn run_undirected(
    n: usize,
    d: usize,
    w: &dyn Fn(usize, usize) -> Weight,
    allowed: Vec<u32>,
    class: ConnClass,
    first_only: bool,
    limits: &OracleLimits,
) -> Result<Option<Vec<Edge>>> {
    let mut s = Undirected {
        n,
        d,
        w,
        allowed,
        class,
        deg: vec![0; n],
        adj: vec![0; n],
        chosen: Vec::new(),
        weight: 0,
        mode: if first_only { Mode::First } else { Mode::Improve },
        cheapest_first: !first_only,
        best: None,
        done: false,
        ticker: Ticker::new(limits),
    };
    s.visit(0)?;
    if first_only {
        return Ok(s.best.map(|b| b.1));
    }
    let Some((opt, _)) = s.best.take() else { return Ok(None) };
    s.mode = Mode::Equal(opt);
    s.cheapest_first = false;
    s.visit(0)?;
    let (_, mut edges) = s.best.ok_or_else(|| Error::Internal("optimum lost in second pass".into()))?;
    edges.sort_unstable();
    Ok(Some(edges))
}

fn check_undirected(n: usize, d: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::OracleSizeLimit { n, max: cap });
    }
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    if d > n - 1 {
        return Err(Error::DegreeTooLarge { n, d });
    }
    if n % 2 == 1 && d % 2 == 1 {
        return Err(Error::ParityInfeasible { n, d });
    }
    Ok(())
}

/// Minimum-weight d-factor of the given class; [`Error::Infeasible`] when
/// none exists. Ties go to the lexicographically smallest edge list.
pub fn exact_connected_dfactor(inst: &Instance, d: usize, class: ConnClass, limits: &OracleLimits) -> Result<Subgraph> {
    if inst.is_directed() {
        return Err(Error::Orientation("exact_connected_dfactor needs an undirected instance"));
    }
    let n = inst.n();
    let cap = match class {
        ConnClass::TwoEdgeConnected => limits.max_two_edge_connected,
        _ => limits.max_connected,
    };
    check_undirected(n, d, cap)?;
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let allowed = (0..n).map(|v| full & !(1 << v)).collect();
    let w = |u: usize, v: usize| inst.weight(u, v);
    match run_undirected(n, d, &w, allowed, class, false, limits)? {
        Some(edges) => Subgraph::from_edges(inst, edges),
        None => Err(Error::Infeasible),
    }
}

/// Exhaustive d-factor search without connectivity requirement.
pub fn exact_dfactor(inst: &Instance, d: usize, limits: &OracleLimits) -> Result<Subgraph> {
    exact_connected_dfactor(inst, d, ConnClass::Factor, limits)
}

/// Some connected d-factor of a sparse graph, if one exists.
pub fn sparse_connected_dfactor(g: &SparseGraph, d: usize, limits: &OracleLimits) -> Result<Option<SparseGraph>> {
    let n = g.n();
    match check_undirected(n, d, limits.max_connected) {
        Err(Error::ParityInfeasible { .. }) | Err(Error::DegreeTooLarge { .. }) => return Ok(None),
        other => other?,
    }
    let mut allowed = vec![0u32; n];
    for (u, v) in g.edges() {
        allowed[u] |= 1 << v;
        allowed[v] |= 1 << u;
    }
    let zero = |_: usize, _: usize| 0;
    run_undirected(n, d, &zero, allowed, ConnClass::Connected, true, limits)?
        .map(|edges| SparseGraph::from_edges(n, edges))
        .transpose()
}

struct Directed<'a> {
    n: usize,
    d: usize,
    w: Vec<Weight>,
    indeg: Vec<usize>,
    out: Vec<u32>,
    weight: Weight,
    mode: Mode,
    best: Option<(Weight, Vec<u32>)>,
    done: bool,
    /// Out-sets of size d per vertex, excluding itself, in index order.
    sets: &'a [Vec<u32>],
    ticker: Ticker,
}

impl Directed<'_> {
    fn bound(&self, i: usize) -> Option<Weight> {
        let (n, d) = (self.n, self.d);
        let mut extra = 0;
        let mut costs = Vec::with_capacity(n);
        let free: usize = (0..n).map(|j| d - self.indeg[j]).sum();
        if free != (n - i) * d {
            return None;
        }
        for u in i..n {
            costs.clear();
            for j in 0..n {
                if j != u && self.indeg[j] < d {
                    costs.push(self.w[u * n + j]);
                }
            }
            if costs.len() < d {
                return None;
            }
            costs.sort_unstable();
            extra += costs[..d].iter().sum::<Weight>();
        }
        // underlying graph of fixed arcs plus every still-possible arc
        let mut und = vec![0u32; n];
        for u in 0..n {
            let mut m = if u < i {
                self.out[u]
            } else {
                (0..n).filter(|&j| j != u && self.indeg[j] < d).fold(0, |m, j| m | 1 << j)
            };
            und[u] |= m;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                und[j] |= 1 << u;
            }
        }
        if weak_components(&und) > 1 {
            return None;
        }
        Some(self.weight + extra)
    }

    fn visit(&mut self, i: usize) -> Result<()> {
        self.ticker.tick()?;
        let n = self.n;
        if i == n {
            let mut und = vec![0u32; n];
            for u in 0..n {
                let mut m = self.out[u];
                und[u] |= m;
                while m != 0 {
                    let j = m.trailing_zeros() as usize;
                    m &= m - 1;
                    und[j] |= 1 << u;
                }
            }
            if weak_components(&und) != 1 {
                return Ok(());
            }
            match self.mode {
                Mode::Improve => {
                    if self.best.as_ref().is_none_or(|(b, _)| self.weight < *b) {
                        self.best = Some((self.weight, self.out.clone()));
                    }
                }
                Mode::Equal(opt) if self.weight != opt => {}
                Mode::Equal(_) | Mode::First => {
                    self.best = Some((self.weight, self.out.clone()));
                    self.done = true;
                }
            }
            return Ok(());
        }
        let Some(lb) = self.bound(i) else { return Ok(()) };
        match (self.mode, &self.best) {
            (Mode::Improve, Some((b, _))) if lb >= *b => return Ok(()),
            (Mode::Equal(opt), _) if lb > opt => return Ok(()),
            _ => {}
        }
        let mut options: Vec<(Weight, u32)> = self.sets[i]
            .iter()
            .filter(|&&m| (0..n).all(|j| m >> j & 1 == 0 || self.indeg[j] < self.d))
            .map(|&m| ((0..n).filter(|&j| m >> j & 1 == 1).map(|j| self.w[i * n + j]).sum(), m))
            .collect();
        if self.mode == Mode::Improve {
            options.sort_by_key(|&(c, _)| c);
        }
        for (c, m) in options {
            for j in 0..n {
                if m >> j & 1 == 1 {
                    self.indeg[j] += 1;
                }
            }
            self.out[i] = m;
            self.weight += c;
            let r = self.visit(i + 1);
            self.weight -= c;
            self.out[i] = 0;
            for j in 0..n {
                if m >> j & 1 == 1 {
                    self.indeg[j] -= 1;
                }
            }
            r?;
            if self.done {
                break;
            }
        }
        Ok(())
    }
}

fn weak_components(und: &[u32]) -> usize {
    let n = und.len();
    let mut seen = 0u32;
    let mut count = 0;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        count += 1;
        let mut frontier = 1u32 << s;
        seen |= frontier;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = und[x] & !seen;
            seen |= new;
            frontier |= new;
        }
    }
    count
}

/// Optimal weakly (hence strongly) connected d-regular digraph. For
/// [`Sense::Max`] the heaviest one.
pub fn exact_directed(inst: &Instance, d: usize, sense: Sense, limits: &OracleLimits) -> Result<Subgraph> {
    if !inst.is_directed() {
        return Err(Error::Orientation("exact_directed needs a directed instance"));
    }
    let n = inst.n();
    if n > limits.max_directed {
        return Err(Error::OracleSizeLimit { n, max: limits.max_directed });
    }
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    if d > n - 1 {
        return Err(Error::DegreeTooLarge { n, d });
    }
    let wmax = inst.max_weight();
    let w: Vec<Weight> = (0..n * n)
        .map(|k| match sense {
            Sense::Min => inst.weight(k / n, k % n),
            Sense::Max => wmax - inst.weight(k / n, k % n),
        })
        .collect();
    // subsets in increasing order of their sorted member lists
    let sets: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v: Vec<u32> = (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == d && m >> i & 1 == 0)
                .collect();
            v.sort_by_key(|&m| (0..n).filter(|&j| m >> j & 1 == 1).collect::<Vec<_>>());
            v
        })
        .collect();
    let mut s = Directed {
        n,
        d,
        w,
        indeg: vec![0; n],
        out: vec![0; n],
        weight: 0,
        mode: Mode::Improve,
        best: None,
        done: false,
        sets: &sets,
        ticker: Ticker::new(limits),
    };
    s.visit(0)?;
    let Some((opt, _)) = s.best.take() else { return Err(Error::Infeasible) };
    s.mode = Mode::Equal(opt);
    s.visit(0)?;
    let (_, out) = s.best.ok_or_else(|| Error::Internal("optimum lost in second pass".into()))?;
    let arcs: Vec<Edge> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| out[i] >> j & 1 == 1)
        .collect();
    Subgraph::from_edges(inst, arcs)
}

/// Optimal perfect matching by enumeration.
pub fn exact_perfect_matching(
    inst: &Instance,
    sense: Sense,
    mask: Option<&BTreeSet<Edge>>,
    limits: &OracleLimits,
) -> Result<Subgraph> {
    let n = inst.n();
    if n > limits.max_matching {
        return Err(Error::OracleSizeLimit { n, max: limits.max_matching });
    }
    fn go(
        inst: &Instance,
        sense: Sense,
        mask: Option<&BTreeSet<Edge>>,
        free: u32,
        acc: &mut Vec<Edge>,
        w: Weight,
        best: &mut Option<(Weight, Vec<Edge>)>,
    ) {
        if free == 0 {
            let better = match (best.as_ref(), sense) {
                (None, _) => true,
                (Some((b, _)), Sense::Min) => w < *b,
                (Some((b, _)), Sense::Max) => w > *b,
            };
            if better {
                *best = Some((w, acc.clone()));
            }
            return;
        }
        let u = free.trailing_zeros() as usize;
        let mut rest = free & !(1 << u);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask.is_some_and(|m| !m.contains(&(u, v))) {
                continue;
            }
            acc.push((u, v));
            go(inst, sense, mask, free & !(1 << u) & !(1 << v), acc, w + inst.weight(u, v), best);
            acc.pop();
        }
    }
    if n % 2 == 1 {
        return Err(Error::Infeasible);
    }
    let mut best = None;
    go(inst, sense, mask, ((1u64 << n) - 1) as u32, &mut Vec::new(), 0, &mut best);
    match best {
        Some((_, edges)) => Subgraph::from_edges(inst, edges),
        None => Err(Error::Infeasible),
    }
}
