use crate::error::{Error, Result};
use crate::graph::{Instance, Subgraph, UnionFind};

/// Minimum spanning tree by Kruskal over edges sorted by `(weight, u, v)`.
pub fn mst(inst: &Instance) -> Result<Subgraph> {
    if inst.is_directed() {
        return Err(Error::Orientation("mst needs an undirected instance"));
    }
    let n = inst.n();
    let mut edges: Vec<(i64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((inst.weight(u, v), u, v));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    let mut tree = Subgraph::empty(inst);
    for (_, u, v) in edges {
        if uf.union(u, v) {
            tree.insert(inst, u, v)?;
            if tree.edge_count() == n - 1 {
                break;
            }
        }
    }
    Ok(tree)
}
