//! Exact perfect matching in general graphs and loopless assignment.

mod blossom;
mod flow;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, Subgraph, Weight};

pub use flow::{assignment, MinCostFlow};
pub(crate) use flow::regular_selection;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sense {
    #[default]
    Min,
    Max,
}

/// Perfect matching over an undirected instance, optionally restricted to
/// the pairs in `mask`.
#[derive(Debug, Clone)]
pub struct MatchingProblem<'a> {
    pub inst: &'a Instance,
    pub sense: Sense,
    pub mask: Option<&'a BTreeSet<Edge>>,
}

impl<'a> MatchingProblem<'a> {
    pub fn new(inst: &'a Instance, sense: Sense) -> Self {
        MatchingProblem { inst, sense, mask: None }
    }

    pub fn with_mask(mut self, mask: &'a BTreeSet<Edge>) -> Self {
        self.mask = Some(mask);
        self
    }
}

/// Optimal perfect matching. Fails with [`Error::Infeasible`] when the
/// (masked) graph has none.
pub fn perfect_matching(p: &MatchingProblem<'_>) -> Result<Subgraph> {
    let inst = p.inst;
    if inst.is_directed() {
        return Err(Error::Orientation("perfect matching needs an undirected instance"));
    }
    let n = inst.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if p.mask.is_none_or(|m| m.contains(&(u, v))) {
                edges.push((u, v, inst.weight(u, v)));
            }
        }
    }
    let mate = perfect_matching_edges(n, &edges, p.sense)?;
    Subgraph::from_edges(inst, (0..n).filter(|&u| u < mate[u]).map(|u| (u, mate[u])))
}

/// Minimum-weight perfect matching on the vertex subset `verts` of an
/// undirected instance, as sorted pairs.
pub fn min_matching_on(inst: &Instance, verts: &[usize]) -> Result<Vec<Edge>> {
    let k = verts.len();
    let mut edges = Vec::with_capacity(k * k / 2);
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b, inst.weight(verts[a], verts[b])));
        }
    }
    let mate = perfect_matching_edges(k, &edges, Sense::Min)?;
    let mut out: Vec<Edge> = (0..k)
        .filter(|&a| a < mate[a])
        .map(|a| {
            let (x, y) = (verts[a], verts[mate[a]]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Optimal perfect matching of a sparse weighted graph; returns mates.
///
/// Weights are shifted to be positive and doubled, then solved as a
/// maximum-weight maximum-cardinality matching. All perfect matchings have
/// the same size, so the shift does not change which one is optimal.
pub(crate) fn perfect_matching_edges(
    nv: usize,
    edges: &[(usize, usize, Weight)],
    sense: Sense,
) -> Result<Vec<usize>> {
    if nv % 2 == 1 {
        return Err(Error::Infeasible);
    }
    if nv == 0 {
        return Ok(Vec::new());
    }
    let lo = edges.iter().map(|e| e.2).min().unwrap_or(0);
    let hi = edges.iter().map(|e| e.2).max().unwrap_or(0);
    let transformed: Vec<_> = edges
        .iter()
        .map(|&(u, v, w)| {
            let w2 = match sense {
                Sense::Min => hi + 1 - w,
                Sense::Max => w - lo + 1,
            };
            (u, v, 2 * w2)
        })
        .collect();
    let mate = blossom::max_weight_matching(nv, &transformed, true)?;
    if mate.contains(&blossom::NONE) {
        return Err(Error::Infeasible);
    }
    Ok(mate)
}
