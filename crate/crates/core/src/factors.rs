//! Optimal d-factors. Undirected factors go through Tutte's gadget to
//! perfect matching; directed ones through a loopless bipartite flow.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, SparseGraph, Subgraph, Weight};
use crate::matching::{perfect_matching_edges, regular_selection, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorSpec {
    pub d: usize,
    pub sense: Sense,
}

impl FactorSpec {
    pub fn min(d: usize) -> Self {
        FactorSpec { d, sense: Sense::Min }
    }

    pub fn max(d: usize) -> Self {
        FactorSpec { d, sense: Sense::Max }
    }
}

fn check_degree(n: usize, d: usize, undirected: bool) -> Result<()> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    if d > n - 1 {
        return Err(Error::DegreeTooLarge { n, d });
    }
    if undirected && n % 2 == 1 && d % 2 == 1 {
        return Err(Error::ParityInfeasible { n, d });
    }
    Ok(())
}

/// Tutte's gadget for a graph given by its weighted edge list.
///
/// Vertex `v` of degree `deg(v)` becomes one external vertex per incident
/// edge plus `deg(v) - d` core vertices joined to all of `v`'s externals by
/// weight-0 edges. The two externals of an original edge are joined by an
/// edge of the original weight. A perfect matching leaves exactly `d`
/// externals per vertex matched across, and those edges form a d-factor.
#[derive(Debug, Clone)]
pub struct TutteGadget {
    edges: Vec<(usize, usize, Weight)>,
    /// `ext[k] = (external of u, external of v)` for original edge `k`.
    ext: Vec<(usize, usize)>,
    /// Per original vertex: its externals and its cores.
    groups: Vec<(Vec<usize>, Vec<usize>)>,
    size: usize,
}

impl TutteGadget {
    pub fn new(n: usize, edges: Vec<(usize, usize, Weight)>, d: usize) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (k, &(u, v, _)) in edges.iter().enumerate() {
            incident[u].push(k);
            incident[v].push(k);
        }
        let mut next = 0;
        let mut ext = vec![(usize::MAX, usize::MAX); edges.len()];
        let mut groups = Vec::with_capacity(n);
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() < d {
                return Err(Error::Infeasible);
            }
            let mut mine = Vec::with_capacity(inc.len());
            for &k in inc {
                if edges[k].0 == v {
                    ext[k].0 = next;
                } else {
                    ext[k].1 = next;
                }
                mine.push(next);
                next += 1;
            }
            let cores: Vec<usize> = (next..next + inc.len() - d).collect();
            next += cores.len();
            groups.push((mine, cores));
        }
        Ok(TutteGadget {
            edges,
            ext,
            groups,
            size: next,
        })
    }

    /// Vertex count of the matching instance.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matching_edges(&self) -> Vec<(usize, usize, Weight)> {
        let mut out = Vec::new();
        for (k, &(a, b)) in self.ext.iter().enumerate() {
            out.push((a, b, self.edges[k].2));
        }
        for (exts, cores) in &self.groups {
            for &c in cores {
                for &x in exts {
                    out.push((x, c, 0));
                }
            }
        }
        out
    }

    /// Original edges whose two externals are matched to each other.
    pub fn factor_from_mates(&self, mate: &[usize]) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .ext
            .iter()
            .enumerate()
            .filter(|&(_, &(a, b))| mate[a] == b)
            .map(|(k, _)| (self.edges[k].0, self.edges[k].1))
            .collect();
        out.sort_unstable();
        out
    }

    /// A perfect matching of the gadget realising the factor `chosen`.
    pub fn mates_from_factor(&self, chosen: &BTreeSet<Edge>) -> Result<Vec<usize>> {
        let mut mate = vec![usize::MAX; self.size];
        for (k, &(a, b)) in self.ext.iter().enumerate() {
            let (u, v, _) = self.edges[k];
            if chosen.contains(&(u.min(v), u.max(v))) {
                mate[a] = b;
                mate[b] = a;
            }
        }
        for (exts, cores) in &self.groups {
            let free: Vec<usize> = exts.iter().copied().filter(|&x| mate[x] == usize::MAX).collect();
            if free.len() != cores.len() {
                return Err(Error::InvalidSubgraph("not a factor of the gadget's degree".into()));
            }
            for (&x, &c) in free.iter().zip(cores) {
                mate[x] = c;
                mate[c] = x;
            }
        }
        Ok(mate)
    }
}

fn tutte_factor(n: usize, edges: Vec<(usize, usize, Weight)>, d: usize, sense: Sense) -> Result<Vec<Edge>> {
    let gadget = TutteGadget::new(n, edges, d)?;
    let mate = perfect_matching_edges(gadget.size(), &gadget.matching_edges(), sense)?;
    Ok(gadget.factor_from_mates(&mate))
}

/// Optimal d-factor of a complete undirected instance.
pub fn min_dfactor(inst: &Instance, spec: FactorSpec) -> Result<Subgraph> {
    if inst.is_directed() {
        return Err(Error::Orientation("min_dfactor needs an undirected instance"));
    }
    let n = inst.n();
    check_degree(n, spec.d, true)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, inst.weight(u, v)));
        }
    }
    let chosen = tutte_factor(n, edges, spec.d, spec.sense)?;
    let sub = Subgraph::from_edges(inst, chosen)?;
    debug_assert!(sub.is_regular(spec.d));
    Ok(sub)
}

/// Optimal arc set with in- and outdegree `d` everywhere. Antiparallel
/// pairs may both be used.
pub fn directed_dfactor(inst: &Instance, spec: FactorSpec) -> Result<Subgraph> {
    if !inst.is_directed() {
        return Err(Error::Orientation("directed_dfactor needs a directed instance"));
    }
    let n = inst.n();
    check_degree(n, spec.d, false)?;
    let wmax = inst.max_weight();
    let arcs = match spec.sense {
        Sense::Min => regular_selection(n, spec.d, |i, j| inst.weight(i, j))?,
        Sense::Max => regular_selection(n, spec.d, |i, j| wmax - inst.weight(i, j))?,
    };
    Subgraph::from_edges(inst, arcs)
}

/// Dispatches on the instance's orientation.
pub fn dfactor(inst: &Instance, spec: FactorSpec) -> Result<Subgraph> {
    if inst.is_directed() {
        directed_dfactor(inst, spec)
    } else {
        min_dfactor(inst, spec)
    }
}

/// Some d-factor of a sparse graph, or [`Error::Infeasible`].
pub fn sparse_dfactor(g: &SparseGraph, d: usize) -> Result<SparseGraph> {
    let n = g.n();
    check_degree(n, d, true)?;
    let edges: Vec<_> = g.edges().map(|(u, v)| (u, v, 1)).collect();
    let chosen = tutte_factor(n, edges, d, Sense::Min)?;
    SparseGraph::from_edges(n, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Orientation;
    use crate::instances::gen_random_metric;

    fn k4_example() -> Instance {
        let w = [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5), (2, 3, 6)];
        Instance::from_fn(Orientation::Undirected, 4, |u, v| {
            w.iter()
                .find(|e| (e.0, e.1) == (u.min(v), u.max(v)))
                .map_or(0, |e| e.2)
        })
        .unwrap()
    }

    /// Minimum weight over all d-regular edge sets by exhaustive search.
    fn brute_undirected(inst: &Instance, d: usize) -> Option<Weight> {
        let n = inst.n();
        let all: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        fn go(inst: &Instance, all: &[Edge], i: usize, deg: &mut Vec<usize>, d: usize, w: Weight, best: &mut Option<Weight>) {
            if i == all.len() {
                if deg.iter().all(|&x| x == d) && best.is_none_or(|b| w < b) {
                    *best = Some(w);
                }
                return;
            }
            let (u, v) = all[i];
            // u is decided once all its pairs are seen; prune when it can no longer reach d
            if deg[u] < d && deg[v] < d {
                deg[u] += 1;
                deg[v] += 1;
                go(inst, all, i + 1, deg, d, w + inst.weight(u, v), best);
                deg[u] -= 1;
                deg[v] -= 1;
            }
            let n = deg.len();
            let last_for_u = v == n - 1;
            if !last_for_u || deg[u] == d {
                go(inst, all, i + 1, deg, d, w, best);
            }
        }
        let mut best = None;
        go(inst, &all, 0, &mut vec![0; n], d, 0, &mut best);
        best
    }

    fn brute_directed(inst: &Instance, d: usize) -> Weight {
        let n = inst.n();
        let mut best = Weight::MAX;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for i in 0..n {
            rows.push(
                (0u32..1 << n)
                    .filter(|m| m.count_ones() as usize == d && m >> i & 1 == 0)
                    .collect(),
            );
        }
        fn go(inst: &Instance, rows: &[Vec<u32>], i: usize, indeg: &mut Vec<usize>, d: usize, w: Weight, best: &mut Weight) {
            let n = rows.len();
            if i == n {
                *best = (*best).min(w);
                return;
            }
            for &m in &rows[i] {
                if (0..n).any(|j| m >> j & 1 == 1 && indeg[j] == d) {
                    continue;
                }
                let mut add = 0;
                for j in 0..n {
                    if m >> j & 1 == 1 {
                        indeg[j] += 1;
                        add += inst.weight(i, j);
                    }
                }
                go(inst, rows, i + 1, indeg, d, w + add, best);
                for j in 0..n {
                    if m >> j & 1 == 1 {
                        indeg[j] -= 1;
                    }
                }
            }
        }
        go(inst, &rows, 0, &mut vec![0; n], d, 0, &mut best);
        best
    }

    #[test]
    fn k4_three_factor_is_everything() {
        let inst = k4_example();
        let f = min_dfactor(&inst, FactorSpec::min(3)).unwrap();
        assert_eq!(f.edge_count(), 6);
        assert_eq!(f.weight(), 21);
    }

    #[test]
    fn k4_two_factors_weigh_fourteen() {
        let inst = k4_example();
        assert_eq!(min_dfactor(&inst, FactorSpec::min(2)).unwrap().weight(), 14);
        assert_eq!(min_dfactor(&inst, FactorSpec::max(2)).unwrap().weight(), 14);
    }

    #[test]
    fn errors() {
        let inst = Instance::uniform(Orientation::Undirected, 7, 1).unwrap();
        assert_eq!(min_dfactor(&inst, FactorSpec::min(3)), Err(Error::ParityInfeasible { n: 7, d: 3 }));
        assert_eq!(min_dfactor(&inst, FactorSpec::min(7)), Err(Error::DegreeTooLarge { n: 7, d: 7 }));
    }

    #[test]
    fn random_k8_three_factor_matches_brute_force() {
        for seed in 0..8 {
            let inst = gen_random_metric(8, seed, Orientation::Undirected).unwrap();
            for d in 1..=3 {
                let f = min_dfactor(&inst, FactorSpec::min(d)).unwrap();
                assert!(f.is_regular(d));
                assert_eq!(Some(f.weight()), brute_undirected(&inst, d), "seed {seed} d {d}");
            }
        }
    }

    #[test]
    fn directed_forced_and_brute_force() {
        let inst = gen_random_metric(2, 4, Orientation::Directed).unwrap();
        let f = directed_dfactor(&inst, FactorSpec::min(1)).unwrap();
        assert_eq!(f.edge_vec(), vec![(0, 1), (1, 0)]);
        assert_eq!(f.weight(), inst.weight(0, 1) + inst.weight(1, 0));
        for seed in 0..6 {
            let inst = gen_random_metric(6, seed, Orientation::Directed).unwrap();
            for d in 1..=2 {
                let f = directed_dfactor(&inst, FactorSpec::min(d)).unwrap();
                assert!((0..6).all(|v| f.in_degree(v) == d && f.out_degree(v) == d));
                assert_eq!(f.weight(), brute_directed(&inst, d));
            }
        }
    }

    #[test]
    fn gadget_round_trip_is_identity() {
        let inst = gen_random_metric(8, 3, Orientation::Undirected).unwrap();
        let f = min_dfactor(&inst, FactorSpec::min(3)).unwrap();
        let edges: Vec<_> = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, inst.weight(u, v)))
            .collect();
        let gadget = TutteGadget::new(8, edges, 3).unwrap();
        let chosen: BTreeSet<Edge> = f.edges().collect();
        let mate = gadget.mates_from_factor(&chosen).unwrap();
        assert!(mate.iter().enumerate().all(|(x, &y)| y != usize::MAX && mate[y] == x));
        assert_eq!(gadget.factor_from_mates(&mate), f.edge_vec());
    }

    #[test]
    fn sparse_factor_respects_graph() {
        // cube graph is 3-regular; its only 3-factor is itself
        let cube: Vec<Edge> = (0..8usize)
            .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
            .filter(|&(u, v)| u < v)
            .collect();
        let g = SparseGraph::from_edges(8, cube.clone()).unwrap();
        let f = sparse_dfactor(&g, 3).unwrap();
        assert_eq!(f.edges().collect::<Vec<_>>(), cube);
        let f2 = sparse_dfactor(&g, 2).unwrap();
        assert!((0..8).all(|v| f2.degree(v) == 2));
        assert!(f2.edges().all(|(u, v)| g.has_edge(u, v)));
        let path = SparseGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(sparse_dfactor(&path, 2), Err(Error::Infeasible));
    }
}
