//! Bridges and 2-edge-connected components.

use crate::error::{Error, Result};
use crate::graph::{Edge, Subgraph};

/// A 2-edge-connected component that is a leaf (or an isolated node) of the
/// bridge forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafComponent {
    pub component: usize,
    /// Lexicographically smallest edge inside the component with neither
    /// endpoint on a bridge, if one exists.
    pub edge: Option<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoEdgeDecomposition {
    pub bridges: Vec<Edge>,
    /// Vertex sets, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// Component index per vertex.
    pub component_of: Vec<usize>,
    /// `(component, component, bridge)` triples.
    pub forest: Vec<(usize, usize, Edge)>,
    pub leaves: Vec<LeafComponent>,
}

impl TwoEdgeDecomposition {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_two_edge_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Bridges of a simple undirected graph given by sorted adjacency lists,
/// by iterative low-link DFS.
pub fn bridges(adj: &[Vec<usize>]) -> Vec<Edge> {
    let n = adj.len();
    let mut tin = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if tin[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if tin[w] == usize::MAX {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > tin[parent] {
                        out.push((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Splits an undirected subgraph into bridges and 2-edge-connected
/// components, and reports the leaves of the component forest.
///
/// A tree consisting of a single component counts as a leaf unless it is
/// the whole graph, so a connected bridgeless subgraph has no leaves while
/// every other component of a disconnected factor gets one.
pub fn two_edge_decomposition(sub: &Subgraph) -> Result<TwoEdgeDecomposition> {
    if sub.is_directed() {
        return Err(Error::Orientation("two-edge decomposition needs an undirected subgraph"));
    }
    let n = sub.n();
    let adj = sub.adjacency();
    let bridge_list = bridges(&adj);
    let is_bridge = |u: usize, v: usize| bridge_list.binary_search(&(u.min(v), u.max(v))).is_ok();

    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if component_of[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        component_of[s] = id;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if component_of[y] == usize::MAX && !is_bridge(x, y) {
                    component_of[y] = id;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let forest: Vec<(usize, usize, Edge)> = bridge_list
        .iter()
        .map(|&(u, v)| (component_of[u], component_of[v], (u, v)))
        .collect();
    let mut forest_degree = vec![0usize; components.len()];
    let mut on_bridge = vec![false; n];
    for &(a, b, (u, v)) in &forest {
        forest_degree[a] += 1;
        forest_degree[b] += 1;
        on_bridge[u] = true;
        on_bridge[v] = true;
    }

    let mut leaves = Vec::new();
    if components.len() > 1 {
        for (c, verts) in components.iter().enumerate() {
            if forest_degree[c] > 1 {
                continue;
            }
            let edge = verts
                .iter()
                .flat_map(|&u| adj[u].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| u < v && component_of[v] == c && !on_bridge[u] && !on_bridge[v])
                .min();
            leaves.push(LeafComponent { component: c, edge });
        }
    }

    Ok(TwoEdgeDecomposition {
        bridges: bridge_list,
        components,
        component_of,
        forest,
        leaves,
    })
}
