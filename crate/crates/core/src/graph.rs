//! Instances, subgraphs, tours and sparse graphs.
//!
//! Every optimization problem in this crate lives on a complete graph
//! ([`Instance`]) given as a dense weight matrix. Solutions are simple
//! edge sets over such an instance ([`Subgraph`]) or vertex orders
//! ([`Tour`]). Decision problems take an arbitrary unweighted
//! [`SparseGraph`].

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::metric;

/// Non-negative integer edge cost.
pub type Weight = i64;

/// A vertex pair. Undirected edges are normalized so that `.0 < .1`;
/// directed arcs keep their `(tail, head)` order.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Undirected,
    Directed,
}

impl Orientation {
    pub fn is_directed(self) -> bool {
        self == Orientation::Directed
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Undirected => f.write_str("undirected"),
            Orientation::Directed => f.write_str("directed"),
        }
    }
}

/// Complete weighted graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    orientation: Orientation,
    w: Vec<Weight>,
    metric: bool,
}

impl Instance {
    /// Builds an instance from a row-major `n * n` matrix. The metric flag
    /// is computed, not trusted.
    pub fn new(orientation: Orientation, n: usize, w: Vec<Weight>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!("need n >= 2, got {n}")));
        }
        if w.len() != n * n {
            return Err(Error::InvalidInstance(format!(
                "expected {} weights, got {}",
                n * n,
                w.len()
            )));
        }
        for u in 0..n {
            if w[u * n + u] != 0 {
                return Err(Error::InvalidInstance(format!("diagonal entry {u} is not 0")));
            }
            for v in 0..n {
                let x = w[u * n + v];
                if x < 0 {
                    return Err(Error::InvalidInstance(format!("negative weight at ({u},{v})")));
                }
                if orientation == Orientation::Undirected && x != w[v * n + u] {
                    return Err(Error::InvalidInstance(format!("asymmetric weight at ({u},{v})")));
                }
            }
        }
        let mut inst = Instance {
            n,
            orientation,
            w,
            metric: false,
        };
        inst.metric = metric::check_metric(&inst);
        Ok(inst)
    }

    pub fn from_fn(
        orientation: Orientation,
        n: usize,
        mut f: impl FnMut(usize, usize) -> Weight,
    ) -> Result<Self> {
        let mut w = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    w[u * n + v] = f(u, v);
                }
            }
        }
        Self::new(orientation, n, w)
    }

    /// Complete graph with every edge weighing `c`.
    pub fn uniform(orientation: Orientation, n: usize, c: Weight) -> Result<Self> {
        Self::from_fn(orientation, n, |_, _| c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.orientation.is_directed()
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> Weight {
        self.w[u * self.n + v]
    }

    pub fn is_metric(&self) -> bool {
        self.metric
    }

    pub(crate) fn set_metric(&mut self, metric: bool) {
        self.metric = metric;
    }

    pub fn matrix(&self) -> &[Weight] {
        &self.w
    }

    pub fn max_weight(&self) -> Weight {
        self.w.iter().copied().max().unwrap_or(0)
    }

    /// Induced instance on `verts`; vertex `i` of the result is `verts[i]`.
    pub fn restrict(&self, verts: &[usize]) -> Result<Instance> {
        Instance::from_fn(self.orientation, verts.len(), |i, j| {
            self.weight(verts[i], verts[j])
        })
    }

    /// Same weights, viewed as a directed instance.
    pub fn to_directed(&self) -> Instance {
        Instance {
            orientation: Orientation::Directed,
            ..self.clone()
        }
    }

    /// Weight of a closed walk visiting `order` cyclically.
    pub fn cycle_weight(&self, order: &[usize]) -> Weight {
        if order.len() < 2 {
            return 0;
        }
        order
            .iter()
            .zip(order.iter().cycle().skip(1))
            .map(|(&a, &b)| self.weight(a, b))
            .sum()
    }

    pub(crate) fn normalize(&self, u: usize, v: usize) -> Edge {
        if self.is_directed() || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Simple spanning subgraph of an [`Instance`]: no loops, no parallel
/// edges, with degree vectors and total weight kept in sync.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    n: usize,
    orientation: Orientation,
    edges: BTreeSet<Edge>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
    weight: Weight,
}

impl Subgraph {
    pub fn empty(inst: &Instance) -> Self {
        Subgraph {
            n: inst.n(),
            orientation: inst.orientation(),
            edges: BTreeSet::new(),
            out_deg: vec![0; inst.n()],
            in_deg: vec![0; inst.n()],
            weight: 0,
        }
    }

    pub fn from_edges(inst: &Instance, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut sub = Subgraph::empty(inst);
        for (u, v) in edges {
            sub.insert(inst, u, v)?;
        }
        Ok(sub)
    }

    pub fn insert(&mut self, inst: &Instance, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidSubgraph(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidSubgraph(format!("self-loop at {u}")));
        }
        let e = inst.normalize(u, v);
        if !self.edges.insert(e) {
            return Err(Error::InvalidSubgraph(format!("duplicate edge ({},{})", e.0, e.1)));
        }
        self.out_deg[e.0] += 1;
        self.in_deg[e.1] += 1;
        self.weight += inst.weight(e.0, e.1);
        Ok(())
    }

    pub fn remove(&mut self, inst: &Instance, u: usize, v: usize) -> Result<()> {
        let e = inst.normalize(u, v);
        if !self.edges.remove(&e) {
            return Err(Error::InvalidSubgraph(format!("edge ({},{}) not present", e.0, e.1)));
        }
        self.out_deg[e.0] -= 1;
        self.in_deg[e.1] -= 1;
        self.weight -= inst.weight(e.0, e.1);
        Ok(())
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let e = if self.orientation.is_directed() || u < v {
            (u, v)
        } else {
            (v, u)
        };
        self.edges.contains(&e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_directed(&self) -> bool {
        self.orientation.is_directed()
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    /// Undirected degree. For directed subgraphs this is in + out.
    pub fn degree(&self, v: usize) -> usize {
        self.out_deg[v] + self.in_deg[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_deg[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_deg[v]
    }

    /// Every vertex has degree `d` (directed: indegree and outdegree `d`).
    pub fn is_regular(&self, d: usize) -> bool {
        if self.is_directed() {
            (0..self.n).all(|v| self.out_deg[v] == d && self.in_deg[v] == d)
        } else {
            (0..self.n).all(|v| self.degree(v) == d)
        }
    }

    /// Neighbors in the underlying undirected graph, ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((v, 0)..(v + 1, 0)).map(|&(_, h)| h)
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, &self.adjacency())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Recomputes the weight from scratch against `inst`.
    pub fn recompute_weight(&self, inst: &Instance) -> Weight {
        self.edges.iter().map(|&(u, v)| inst.weight(u, v)).sum()
    }
}

pub(crate) fn components_of(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Hamiltonian cycle given as a vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
    weight: Weight,
}

impl Tour {
    pub fn new(inst: &Instance, order: Vec<usize>) -> Result<Self> {
        let n = inst.n();
        if order.len() != n {
            return Err(Error::InvalidSubgraph(format!(
                "tour has {} vertices, instance has {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidSubgraph(format!("tour is not a permutation (vertex {v})")));
            }
            seen[v] = true;
        }
        let weight = inst.cycle_weight(&order);
        Ok(Tour { order, weight })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Consecutive pairs including the closing one.
    pub fn arcs(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| (self.order[i], self.order[(i + 1) % n]))
    }

    /// Keeps only the vertices in `keep`, preserving the cyclic order.
    pub fn shortcut_through(&self, keep: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.order.len()];
        for &v in keep {
            mark[v] = true;
        }
        self.order.iter().copied().filter(|&v| mark[v]).collect()
    }

    /// As an edge set (undirected instances need `n >= 3`).
    pub fn to_subgraph(&self, inst: &Instance) -> Result<Subgraph> {
        Subgraph::from_edges(inst, self.arcs())
    }
}

/// Unweighted simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl SparseGraph {
    pub fn new(n: usize) -> Self {
        SparseGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = SparseGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SparseGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidSubgraph(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidSubgraph(format!("self-loop at {u}")));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidSubgraph(format!("duplicate edge ({u},{v})")));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, &self.adjacency())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Undirected graph with integer edge weights, the input to metric completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, Weight)>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Weight) {
        self.edges.push((u, v, w));
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Instance {
        let w = [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5), (2, 3, 6)];
        Instance::from_fn(Orientation::Undirected, 4, |u, v| {
            w.iter()
                .find(|&&(a, b, _)| (a, b) == (u.min(v), u.max(v)))
                .unwrap()
                .2
        })
        .unwrap()
    }

    #[test]
    fn instance_rejects_bad_matrices() {
        assert!(Instance::new(Orientation::Undirected, 2, vec![0, 1, 2, 0]).is_err());
        assert!(Instance::new(Orientation::Directed, 2, vec![0, 1, 2, 0]).is_ok());
        assert!(Instance::new(Orientation::Directed, 2, vec![1, 1, 2, 0]).is_err());
        assert!(Instance::new(Orientation::Directed, 2, vec![0, -1, 2, 0]).is_err());
        assert!(Instance::new(Orientation::Directed, 1, vec![0]).is_err());
    }

    #[test]
    fn subgraph_tracks_weight_and_degrees() {
        let inst = k4();
        let mut s = Subgraph::from_edges(&inst, [(1, 0), (2, 3)]).unwrap();
        assert_eq!(s.weight(), 7);
        assert_eq!(s.degree(0), 1);
        assert!(s.contains(0, 1) && s.contains(1, 0));
        assert!(s.insert(&inst, 0, 1).is_err());
        assert!(s.insert(&inst, 2, 2).is_err());
        s.remove(&inst, 3, 2).unwrap();
        assert_eq!(s.weight(), 1);
        assert_eq!(s.components().len(), 3);
        assert_eq!(s.recompute_weight(&inst), s.weight());
    }

    #[test]
    fn tour_weight_includes_closing_edge() {
        let inst = k4();
        let t = Tour::new(&inst, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(t.weight(), 1 + 4 + 6 + 3);
        assert!(Tour::new(&inst, vec![0, 1, 1, 3]).is_err());
        assert_eq!(t.shortcut_through(&[3, 1]), vec![1, 3]);
    }

    #[test]
    fn directed_arcs_keep_orientation() {
        let inst = Instance::uniform(Orientation::Directed, 3, 2).unwrap();
        let s = Subgraph::from_edges(&inst, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(s.out_degree(1), 2);
        assert_eq!(s.in_degree(1), 1);
        assert!(!s.contains(2, 1));
        assert_eq!(s.out_neighbors(1).collect::<Vec<_>>(), vec![0, 2]);
    }
}
