//! Connected and 2-edge-connected d-factors: approximation algorithms, the
//! near-half decision procedure, and degree reduction.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::decomposition::two_edge_decomposition;
use crate::error::{ensure_internal, Error, Result};
use crate::factors::{dfactor, directed_dfactor, min_dfactor, sparse_dfactor, FactorSpec};
use crate::graph::{components_of, Edge, Instance, SparseGraph, Subgraph, Weight};
use crate::matching::Sense;
use crate::mst::mst;
use crate::tours::{double_tree, tour, TourStrategy};
use crate::verify::{verify_subgraph, VerifyClass};

/// A solver result together with the bound it was measured against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: Subgraph,
    pub algorithm: String,
    pub sense: Sense,
    pub claimed_ratio: Rational64,
    /// For minimization: the largest proven lower bound on the optimum.
    /// For maximization: an upper bound (the weight of a maximum d-factor).
    pub lower_bound: Weight,
    /// `weight / lower_bound`; `1` when both are zero.
    pub certified_ratio: Rational64,
    pub factor_weight: Weight,
    /// Weight of the strategy tour, when one was computed.
    pub tour_weight: Option<Weight>,
}

impl SolveReport {
    fn new(
        solution: Subgraph,
        algorithm: String,
        sense: Sense,
        claimed_ratio: Rational64,
        bound: Weight,
        factor_weight: Weight,
        tour_weight: Option<Weight>,
    ) -> Result<Self> {
        let w = solution.weight();
        let certified_ratio = if bound == 0 {
            ensure_internal!(w == 0, "zero bound with solution weight {w}");
            Rational64::from_integer(1)
        } else {
            Rational64::new(w, bound)
        };
        match sense {
            Sense::Min => ensure_internal!(w >= bound, "weight {w} below lower bound {bound}"),
            Sense::Max => ensure_internal!(w <= bound, "weight {w} above upper bound {bound}"),
        }
        Ok(SolveReport {
            solution,
            algorithm,
            sense,
            claimed_ratio,
            lower_bound: bound,
            certified_ratio,
            factor_weight,
            tour_weight,
        })
    }

    pub fn weight(&self) -> Weight {
        self.solution.weight()
    }
}

/// Solver selection for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Auto,
    Approx3,
    RPlusOne(TourStrategy),
    LargeD,
    Factor,
    MaxArcs,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Auto => f.write_str("auto"),
            Algorithm::Approx3 => f.write_str("approx3"),
            Algorithm::RPlusOne(s) => write!(f, "r-plus-1:{s}"),
            Algorithm::LargeD => f.write_str("large-d"),
            Algorithm::Factor => f.write_str("factor"),
            Algorithm::MaxArcs => f.write_str("max-arcs"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// `r-plus-1` alone picks the default strategy for the orientation at
    /// solve time; see [`default_strategy`].
    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let alg = match (head, tail) {
            ("auto", None) => Algorithm::Auto,
            ("approx3", None) => Algorithm::Approx3,
            ("r-plus-1", None) => Algorithm::RPlusOne(TourStrategy::Christofides),
            ("r-plus-1", Some(t)) => Algorithm::RPlusOne(t.parse()?),
            ("large-d", None) => Algorithm::LargeD,
            ("factor", None) => Algorithm::Factor,
            ("max-arcs", None) => Algorithm::MaxArcs,
            _ => return Err(Error::Precondition(format!("unknown algorithm `{s}`"))),
        };
        Ok(alg)
    }
}

/// Christofides for undirected instances, the cycle-cover scheme for
/// directed ones.
pub fn default_strategy(directed: bool) -> TourStrategy {
    if directed {
        TourStrategy::CycleCoverLog
    } else {
        TourStrategy::Christofides
    }
}

/// Runs `alg` and returns its report.
pub fn solve(inst: &Instance, d: usize, alg: Algorithm) -> Result<SolveReport> {
    match alg {
        Algorithm::Auto => solve_auto(inst, d),
        Algorithm::Approx3 => approx3(inst, d),
        Algorithm::RPlusOne(s) => {
            // Undirected strategies on a directed instance fall back to the
            // directed default rather than failing.
            let s = if s.supports(inst.is_directed()) { s } else { default_strategy(inst.is_directed()) };
            approx_r_plus_1(inst, d, s)
        }
        Algorithm::LargeD => approx2_large_d(inst, d),
        Algorithm::Factor => connected_factor_large_d(inst, d),
        Algorithm::MaxArcs => max_arcs_approx(inst, d),
    }
}

/// Best available guarantee for the instance shape.
pub fn solve_auto(inst: &Instance, d: usize) -> Result<SolveReport> {
    let n = inst.n();
    if inst.is_directed() {
        return approx_r_plus_1(inst, d, TourStrategy::CycleCoverLog);
    }
    if 2 * d >= n {
        connected_factor_large_d(inst, d)
    } else if 3 * d >= n {
        approx2_large_d(inst, d)
    } else if d.is_multiple_of(2) {
        approx_r_plus_1(inst, d, TourStrategy::Christofides)
    } else {
        approx3(inst, d)
    }
}

fn check_shape(inst: &Instance, d: usize, directed: bool, metric: bool) -> Result<()> {
    let n = inst.n();
    if inst.is_directed() != directed {
        return Err(Error::Orientation(if directed {
            "this algorithm needs a directed instance"
        } else {
            "this algorithm needs an undirected instance"
        }));
    }
    if metric && !inst.is_metric() {
        return Err(Error::MetricRequired);
    }
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    if d >= n {
        return Err(Error::DegreeTooLarge { n, d });
    }
    if !directed && (n * d) % 2 == 1 {
        return Err(Error::ParityInfeasible { n, d });
    }
    Ok(())
}

fn ceil_div(a: Weight, b: Weight) -> Weight {
    (a + b - 1) / b
}

/// Lower bound on a connected d-factor from a tour that is within `ratio`
/// of the optimal tour, given `tour <= scale * OPT`.
fn tour_bound(tour_weight: Weight, ratio: Rational64, scale: i64) -> Weight {
    ceil_div(tour_weight * ratio.denom(), ratio.numer() * scale)
}

fn post_check(inst: &Instance, sub: &Subgraph, d: usize, class: VerifyClass) -> Result<()> {
    verify_subgraph(inst, sub, d, class).into_result()
}

/// Removes `removed` and adds `added` to `c`; every added edge must be new.
fn patch(inst: &Instance, c: &Subgraph, removed: &[Edge], added: &[Edge]) -> Result<Subgraph> {
    let mut r = c.clone();
    for &(u, v) in removed {
        r.remove(inst, u, v)?;
    }
    for &(u, v) in added {
        ensure_internal!(!r.contains(u, v), "patch edge ({u},{v}) already present");
        r.insert(inst, u, v)?;
    }
    Ok(r)
}

/// Cyclic order of `reps` along `order`, rotated to start at the smallest.
fn cyclic_order(order: &[usize], reps: &[usize]) -> Vec<usize> {
    let keep: BTreeSet<usize> = reps.iter().copied().collect();
    let mut seq: Vec<usize> = order.iter().copied().filter(|v| keep.contains(v)).collect();
    if let Some(pos) = seq.iter().position(|&v| Some(&v) == keep.first()) {
        seq.rotate_left(pos);
    }
    seq
}

/// 3-approximation with a 2-edge-connected output. A minimum d-factor is
/// patched along a double-tree tour that visits one endpoint of a
/// designated edge in every leaf of its bridge forest.
pub fn approx3(inst: &Instance, d: usize) -> Result<SolveReport> {
    check_shape(inst, d, false, true)?;
    if d < 2 {
        return Err(Error::Precondition("approx3 needs d >= 2".into()));
    }
    let c = min_dfactor(inst, FactorSpec::min(d))?;
    let t = mst(inst)?;
    let dec = two_edge_decomposition(&c)?;
    let k = dec.leaf_count();
    ensure_internal!(k != 1, "bridge forest with a single leaf");

    let (r, tour_weight) = if k == 0 {
        (c.clone(), None)
    } else {
        let mut leaf_edges = Vec::with_capacity(k);
        for leaf in &dec.leaves {
            match leaf.edge {
                Some(e) => leaf_edges.push(e),
                None => {
                    return Err(Error::Internal(format!(
                        "leaf component {} has no edge away from bridges",
                        leaf.component
                    )))
                }
            }
        }
        let h = double_tree(inst)?;
        let us: Vec<usize> = leaf_edges.iter().map(|e| e.0).collect();
        let seq = cyclic_order(h.order(), &us);
        ensure_internal!(seq.len() == k, "tour misses a leaf vertex");
        let v_of = |u: usize| leaf_edges[us.iter().position(|&x| x == u).unwrap()].1;
        let added: Vec<Edge> = (0..k).map(|j| (seq[j], v_of(seq[(j + 1) % k]))).collect();
        let r = patch(inst, &c, &leaf_edges, &added)?;
        ensure_internal!(
            r.weight() <= c.weight() + h.weight(),
            "patched weight {} exceeds factor {} plus tour {}",
            r.weight(),
            c.weight(),
            h.weight()
        );
        (r, Some(h.weight()))
    };
    post_check(inst, &r, d, VerifyClass::TwoEdgeConnected)?;
    ensure_internal!(
        r.weight() <= 2 * t.weight() + c.weight(),
        "weight {} exceeds twice the tree plus the factor",
        r.weight()
    );

    // The optimal tour is at most RCS_d for even d, and at most twice that
    // for odd d.
    let scale = if d.is_multiple_of(2) { 1 } else { 2 };
    let mut lb = t.weight().max(c.weight());
    if let Some(hw) = tour_weight {
        lb = lb.max(tour_bound(hw, TourStrategy::DoubleTree.ratio(inst.n()), scale));
    }
    SolveReport::new(r, "approx3".into(), Sense::Min, Rational64::from_integer(3), lb, c.weight(), tour_weight)
}

/// `(r + 1)`-approximation for even d (undirected) or any d (directed),
/// where `r` is the ratio of the tour strategy.
pub fn approx_r_plus_1(inst: &Instance, d: usize, strat: TourStrategy) -> Result<SolveReport> {
    let directed = inst.is_directed();
    check_shape(inst, d, directed, true)?;
    if !directed && d % 2 == 1 {
        return Err(Error::UseApprox3);
    }
    if !strat.supports(directed) {
        return Err(Error::Precondition(format!("strategy {strat} does not support {} instances", inst.orientation())));
    }
    let n = inst.n();
    let ratio = strat.ratio(n);
    let c = dfactor(inst, FactorSpec::min(d))?;
    let comps = c.components();
    let k = comps.len();

    let (r, tour_weight) = if k == 1 {
        (c.clone(), None)
    } else {
        let mut comp_of = vec![0; n];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = i;
            }
        }
        let mut rep: Vec<Option<Edge>> = vec![None; k];
        for e in c.edges() {
            rep[comp_of[e.0]].get_or_insert(e);
        }
        let reps: Vec<Edge> = rep.into_iter().map(|e| e.expect("components carry edges")).collect();
        let h = tour(inst, strat)?;
        let us: Vec<usize> = reps.iter().map(|e| e.0).collect();
        let seq = cyclic_order(h.order(), &us);
        ensure_internal!(seq.len() == k, "tour misses a component representative");
        let v_of = |u: usize| reps[us.iter().position(|&x| x == u).unwrap()].1;
        let added: Vec<Edge> = (0..k).map(|j| (seq[j], v_of(seq[(j + 1) % k]))).collect();
        let r = patch(inst, &c, &reps, &added)?;
        ensure_internal!(
            r.weight() <= c.weight() + h.weight(),
            "patched weight {} exceeds factor {} plus tour {}",
            r.weight(),
            c.weight(),
            h.weight()
        );
        (r, Some(h.weight()))
    };
    let class = if directed { VerifyClass::DirectedConnected } else { VerifyClass::Connected };
    post_check(inst, &r, d, class)?;

    let mut lb = c.weight();
    if !directed {
        lb = lb.max(mst(inst)?.weight());
    }
    if let Some(hw) = tour_weight {
        lb = lb.max(tour_bound(hw, ratio, 1));
    }
    SolveReport::new(r, format!("r-plus-1:{strat}"), Sense::Min, ratio + 1, lb, c.weight(), tour_weight)
}

/// For `2d >= n` every d-factor is connected, so a minimum one is optimal.
pub fn connected_factor_large_d(inst: &Instance, d: usize) -> Result<SolveReport> {
    check_shape(inst, d, inst.is_directed(), false)?;
    if 2 * d < inst.n() {
        return Err(Error::Precondition(format!("a plain factor needs 2d >= n (d = {d}, n = {})", inst.n())));
    }
    let c = dfactor(inst, FactorSpec::min(d))?;
    let class = if inst.is_directed() { VerifyClass::DirectedConnected } else { VerifyClass::Connected };
    post_check(inst, &c, d, class)?;
    let w = c.weight();
    SolveReport::new(c, "factor".into(), Sense::Min, Rational64::from_integer(1), w, w, None)
}

/// 2-approximation for `3d >= n`: the minimum factor has at most two
/// components, joined by one edge swap through the lightest crossing edge.
pub fn approx2_large_d(inst: &Instance, d: usize) -> Result<SolveReport> {
    check_shape(inst, d, false, true)?;
    let n = inst.n();
    if 3 * d < n {
        return Err(Error::Precondition(format!("large-d algorithm needs 3d >= n (d = {d}, n = {n})")));
    }
    let c = min_dfactor(inst, FactorSpec::min(d))?;
    let t = mst(inst)?;
    let comps = c.components();
    let mut lb = t.weight().max(c.weight());
    let r = match comps.len() {
        1 => c.clone(),
        2 => {
            for comp in &comps {
                // Dirac: minimum degree d >= |C|/2 makes the component
                // Hamiltonian, hence 2-edge-connected.
                ensure_internal!(comp.len() <= 2 * d, "component of {} vertices is too large for d = {d}", comp.len());
            }
            let mut side = vec![false; n];
            for &v in &comps[1] {
                side[v] = true;
            }
            let (cw, u, v) = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| side[u] != side[v])
                .map(|(u, v)| (inst.weight(u, v), u, v))
                .min()
                .expect("two nonempty sides");
            // Any connected factor crosses the cut at least twice.
            lb = lb.max(2 * cw);
            let adj = c.adjacency();
            let (u2, v2) = (adj[u][0], adj[v][0]);
            let r = patch(inst, &c, &[(u, u2), (v, v2)], &[(u, v), (u2, v2)])?;
            ensure_internal!(
                r.weight() <= c.weight() + 2 * cw,
                "swap added more than twice the crossing edge"
            );
            r
        }
        m => return Err(Error::Internal(format!("minimum factor has {m} components with 3d >= n"))),
    };
    post_check(inst, &r, d, VerifyClass::Connected)?;
    SolveReport::new(r, "large-d".into(), Sense::Min, Rational64::from_integer(2), lb, c.weight(), None)
}

/// Negative answer of [`decide_half`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfWitness {
    /// The graph itself is disconnected.
    Disconnected,
    /// The graph has no d-factor at all.
    NoFactor,
    /// Every edge between the two cliques of the factor touches this vertex.
    CutVertex(usize),
}

impl fmt::Display for HalfWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfWitness::Disconnected => f.write_str("disconnected"),
            HalfWitness::NoFactor => f.write_str("no-factor"),
            HalfWitness::CutVertex(u) => write!(f, "cut-vertex {u}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfDecision {
    Yes(SparseGraph),
    No(HalfWitness),
}

/// Whether removing `u` disconnects `g`.
pub fn is_cut_vertex(g: &SparseGraph, u: usize) -> bool {
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .enumerate()
        .map(|(v, list)| if v == u { Vec::new() } else { list.into_iter().filter(|&x| x != u).collect() })
        .collect();
    components_of(g.n(), &adj).len() > 2
}

/// Decides whether `g` has a connected d-factor for `d = ceil(n/2) - 1`
/// (or any `d >= n/2`), with a certificate either way.
pub fn decide_half(g: &SparseGraph, d: usize) -> Result<HalfDecision> {
    let n = g.n();
    if d < 2 || d >= n || (2 * d < n && d + 1 != n.div_ceil(2)) {
        return Err(Error::UnsupportedDegree(format!("d = {d} with n = {n}")));
    }
    if !g.is_connected() {
        return Ok(HalfDecision::No(HalfWitness::Disconnected));
    }
    let f = match sparse_dfactor(g, d) {
        Ok(f) => f,
        Err(e) if e.is_infeasible() => return Ok(HalfDecision::No(HalfWitness::NoFactor)),
        Err(e) => return Err(e),
    };
    let comps = f.components();
    if comps.len() == 1 {
        return Ok(HalfDecision::Yes(f));
    }
    ensure_internal!(
        comps.len() == 2 && comps.iter().all(|c| c.len() == d + 1),
        "factor splits into components of sizes {:?}",
        comps.iter().map(Vec::len).collect::<Vec<_>>()
    );
    let mut side = vec![false; n];
    for &v in &comps[1] {
        side[v] = true;
    }
    let crossing: Vec<Edge> = g
        .edges()
        .filter(|&(u, v)| side[u] != side[v])
        .map(|(u, v)| if side[u] { (v, u) } else { (u, v) })
        .collect();
    let pair = crossing
        .iter()
        .enumerate()
        .find_map(|(i, &a)| crossing[i + 1..].iter().find(|b| b.0 != a.0 && b.1 != a.1).map(|&b| (a, b)));
    match pair {
        Some(((u, v), (u2, v2))) => {
            let mut edges: BTreeSet<Edge> = f.edges().collect();
            edges.remove(&(u.min(u2), u.max(u2)));
            edges.remove(&(v.min(v2), v.max(v2)));
            edges.insert((u.min(v), u.max(v)));
            edges.insert((u2.min(v2), u2.max(v2)));
            let r = SparseGraph::from_edges(n, edges)?;
            ensure_internal!(
                r.is_connected() && (0..n).all(|x| r.degree(x) == d),
                "swap did not produce a connected factor"
            );
            Ok(HalfDecision::Yes(r))
        }
        None => {
            // No two disjoint crossing edges: one vertex covers them all.
            let (a, b) = crossing[0];
            let u = if crossing.iter().all(|e| e.0 == a) { a } else { b };
            ensure_internal!(is_cut_vertex(g, u), "vertex {u} covers the crossing edges but is not a cut vertex");
            Ok(HalfDecision::No(HalfWitness::CutVertex(u)))
        }
    }
}

/// Approximation for maximum-weight connected directed d-factors: the
/// lightest arc of every component of a maximum factor is rerouted to the
/// next component. No triangle inequality is needed.
pub fn max_arcs_approx(inst: &Instance, d: usize) -> Result<SolveReport> {
    check_shape(inst, d, true, false)?;
    let c = directed_dfactor(inst, FactorSpec::max(d))?;
    let comps = c.components();
    let k = comps.len();
    let r = if k == 1 {
        c.clone()
    } else {
        let mut comp_of = vec![0; inst.n()];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = i;
            }
        }
        let mut lightest: Vec<Option<(Weight, Edge)>> = vec![None; k];
        for (a, b) in c.edges() {
            let slot = &mut lightest[comp_of[a]];
            let cand = (inst.weight(a, b), (a, b));
            if slot.is_none_or(|cur| cand < cur) {
                *slot = Some(cand);
            }
        }
        let removed: Vec<Edge> = lightest.into_iter().map(|x| x.expect("components carry arcs").1).collect();
        let added: Vec<Edge> = (0..k).map(|i| (removed[i].0, removed[(i + 1) % k].1)).collect();
        patch(inst, &c, &removed, &added)?
    };
    post_check(inst, &r, d, VerifyClass::DirectedConnected)?;
    let dd = (d * (d + 1)) as i64;
    ensure_internal!(
        r.weight() * dd >= c.weight() * (dd - 1),
        "weight {} below the guaranteed fraction of {}",
        r.weight(),
        c.weight()
    );
    let claimed = Rational64::from_integer(1) - Rational64::new(1, dd);
    let fw = c.weight();
    SolveReport::new(r, "max-arcs".into(), Sense::Max, claimed, fw, fw, None)
}

fn require_connected_factor(r: &Subgraph, d: usize) -> Result<()> {
    if !r.is_regular(d) || !r.is_connected() {
        return Err(Error::Precondition(format!("input is not a connected {d}-factor")));
    }
    Ok(())
}

/// Turns a connected d-factor (d even, at least 4) into a connected
/// (d-2)-factor of no larger weight, one vertex at a time.
pub fn reduce_degree_undirected(inst: &Instance, r: &Subgraph, d: usize) -> Result<Subgraph> {
    if inst.is_directed() || r.is_directed() {
        return Err(Error::Orientation("reduce_degree_undirected needs an undirected instance"));
    }
    if d % 2 == 1 {
        return Err(Error::EvenDegreeOnly);
    }
    if d < 4 {
        return Err(Error::Precondition("degree reduction needs d >= 4".into()));
    }
    if !inst.is_metric() {
        return Err(Error::MetricRequired);
    }
    require_connected_factor(r, d)?;
    let n = inst.n();
    if n == d + 1 {
        return Err(Error::TrivialCase);
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, v) in r.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for v in 0..n {
        let (x, y) = match split_without(&adj, v) {
            None => {
                // Non-cut vertex: two neighbors that are not adjacent.
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let pair = nb
                    .iter()
                    .enumerate()
                    .find_map(|(i, &x)| nb[i + 1..].iter().find(|&&y| !adj[x].contains(&y)).map(|&y| (x, y)));
                match pair {
                    Some(p) => p,
                    None => return Err(Error::Internal(format!("neighbors of {v} form a clique"))),
                }
            }
            Some(comp) => {
                let x = *adj[v].first().expect("degree d");
                let y = *adj[v].iter().find(|&&y| comp[y] != comp[x]).expect("cut vertex");
                (x, y)
            }
        };
        adj[v].remove(&x);
        adj[v].remove(&y);
        adj[x].remove(&v);
        adj[y].remove(&v);
        adj[x].insert(y);
        adj[y].insert(x);
    }
    let out = Subgraph::from_edges(inst, (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v))))?;
    post_check(inst, &out, d - 2, VerifyClass::Connected)?;
    ensure_internal!(out.weight() <= r.weight(), "reduction increased the weight");
    Ok(out)
}

/// Component labels of the underlying graph minus `v`, or `None` if `v` is
/// not a cut vertex.
fn split_without(adj: &[BTreeSet<usize>], v: usize) -> Option<Vec<usize>> {
    let lists: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(u, s)| if u == v { Vec::new() } else { s.iter().copied().filter(|&x| x != v).collect() })
        .collect();
    let comps = components_of(adj.len(), &lists);
    // `v` itself is a singleton component.
    if comps.len() <= 2 {
        return None;
    }
    let mut label = vec![0; adj.len()];
    for (i, c) in comps.iter().enumerate() {
        for &u in c {
            label[u] = i;
        }
    }
    Some(label)
}

/// Turns a connected d-regular digraph (d >= 2) into a connected
/// (d-1)-regular one of no larger weight.
pub fn reduce_degree_directed(inst: &Instance, r: &Subgraph, d: usize) -> Result<Subgraph> {
    if !inst.is_directed() || !r.is_directed() {
        return Err(Error::Orientation("reduce_degree_directed needs a directed instance"));
    }
    if d < 2 {
        return Err(Error::Precondition("degree reduction needs d >= 2".into()));
    }
    if !inst.is_metric() {
        return Err(Error::MetricRequired);
    }
    require_connected_factor(r, d)?;
    let n = inst.n();
    let out = if n == d + 1 {
        // The complete digraph: drop the cycle 0 -> 1 -> ... -> n-1 -> 0.
        let mut out = r.clone();
        for i in 0..n {
            out.remove(inst, i, (i + 1) % n)?;
        }
        out
    } else {
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut pred: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (a, b) in r.edges() {
            succ[a].insert(b);
            pred[b].insert(a);
        }
        for v in 0..n {
            let und: Vec<BTreeSet<usize>> = (0..n).map(|u| succ[u].union(&pred[u]).copied().collect()).collect();
            let (x, y) = match split_without(&und, v) {
                Some(comp) => {
                    let x = *pred[v].first().expect("indegree d");
                    let y = *succ[v].iter().find(|&&y| comp[y] != comp[x]).ok_or_else(|| {
                        Error::Internal(format!("no out-arc of cut vertex {v} leaves the component of {x}"))
                    })?;
                    (x, y)
                }
                None => {
                    let pair = succ[v]
                        .iter()
                        .find_map(|&y| pred[v].iter().find(|&&x| x != y && !succ[x].contains(&y)).map(|&x| (x, y)));
                    pair.ok_or_else(|| Error::Internal(format!("no admissible arc pair at {v}")))?
                }
            };
            succ[x].remove(&v);
            pred[v].remove(&x);
            succ[v].remove(&y);
            pred[y].remove(&v);
            succ[x].insert(y);
            pred[y].insert(x);
        }
        Subgraph::from_edges(inst, (0..n).flat_map(|a| succ[a].iter().map(move |&b| (a, b))))?
    };
    post_check(inst, &out, d - 1, VerifyClass::DirectedConnected)?;
    ensure_internal!(out.weight() <= r.weight(), "reduction increased the weight");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Orientation;
    use crate::instances::{gen_random_metric, gen_groups, gen_random_weights, gen_star, two_cliques};
    use crate::oracle::{exact_connected_dfactor, exact_directed, sparse_connected_dfactor, ConnClass, OracleLimits};

    #[test]
    fn uniform_weights_return_the_factor() {
        let inst = Instance::uniform(Orientation::Undirected, 8, 3).unwrap();
        let rep = approx3(&inst, 4).unwrap();
        assert_eq!(rep.weight(), 8 * 4 / 2 * 3);
        assert_eq!(rep.certified_ratio, Rational64::from_integer(1));
    }

    #[test]
    fn star_gadget_weight() {
        let (inst, _) = gen_star(3, 5).unwrap();
        let rep = approx3(&inst, 3).unwrap();
        assert_eq!(rep.weight(), 9);
    }

    #[test]
    fn approx3_against_oracle() {
        let lim = OracleLimits::default();
        for seed in 0..6 {
            let inst = gen_random_metric(8, seed, Orientation::Undirected).unwrap();
            let rep = approx3(&inst, 3).unwrap();
            let opt = exact_connected_dfactor(&inst, 3, ConnClass::Connected, &lim).unwrap();
            assert!(rep.weight() <= 3 * opt.weight());
            assert!(rep.lower_bound <= opt.weight());
        }
    }

    #[test]
    fn r_plus_1_even_and_directed() {
        let lim = OracleLimits::default();
        for seed in 0..4 {
            let inst = gen_random_metric(7, seed, Orientation::Undirected).unwrap();
            let rep = approx_r_plus_1(&inst, 2, TourStrategy::Exact).unwrap();
            let opt = exact_connected_dfactor(&inst, 2, ConnClass::Connected, &lim).unwrap();
            assert!(rep.weight() <= 2 * opt.weight());

            let dir = gen_random_metric(6, seed, Orientation::Directed).unwrap();
            let rep = approx_r_plus_1(&dir, 2, TourStrategy::CycleCoverLog).unwrap();
            let opt = exact_directed(&dir, 2, Sense::Min, &lim).unwrap();
            assert!(Rational64::from_integer(rep.weight()) <= rep.claimed_ratio * opt.weight());
            assert!(rep.lower_bound <= opt.weight());
        }
        let inst = gen_random_metric(6, 1, Orientation::Undirected).unwrap();
        assert_eq!(approx_r_plus_1(&inst, 3, TourStrategy::Christofides).unwrap_err(), Error::UseApprox3);
    }

    #[test]
    fn two_clique_swap() {
        let (inst, _) = gen_groups(2, 4).unwrap();
        let rep = approx2_large_d(&inst, 4).unwrap();
        assert_eq!(rep.weight(), 2);
        assert_eq!(rep.lower_bound, 2);
        let inst = gen_random_metric(9, 3, Orientation::Undirected).unwrap();
        assert!(approx2_large_d(&inst, 2).is_err());
    }

    fn k4_pair(links: &[Edge]) -> SparseGraph {
        two_cliques(4, 4, links).unwrap()
    }

    #[test]
    fn decide_half_cases() {
        assert!(matches!(decide_half(&SparseGraph::complete(8), 3).unwrap(), HalfDecision::Yes(_)));
        assert_eq!(decide_half(&k4_pair(&[(3, 4)]), 3).unwrap(), HalfDecision::No(HalfWitness::CutVertex(3)));
        match decide_half(&k4_pair(&[(0, 4), (1, 5)]), 3).unwrap() {
            HalfDecision::Yes(f) => {
                assert!(f.is_connected());
                assert!((0..8).all(|v| f.degree(v) == 3));
            }
            other => panic!("{other:?}"),
        }
        let lim = OracleLimits::default();
        assert!(sparse_connected_dfactor(&k4_pair(&[(3, 4)]), 3, &lim).unwrap().is_none());
        assert!(decide_half(&SparseGraph::complete(8), 2).is_err());
    }

    #[test]
    fn max_arcs_two_cycles() {
        // Heavy 2-cycles {0,1} and {2,3}.
        let inst = Instance::from_fn(Orientation::Directed, 4, |u, v| if u / 2 == v / 2 { 10 } else { 1 }).unwrap();
        let rep = max_arcs_approx(&inst, 1).unwrap();
        assert_eq!(rep.lower_bound, 40);
        assert!(rep.weight() * 2 >= 40);
        assert!(rep.solution.is_connected());
        for seed in 0..4 {
            let inst = gen_random_weights(6, seed, Orientation::Directed).unwrap();
            let rep = max_arcs_approx(&inst, 2).unwrap();
            assert!(rep.weight() * 6 >= rep.lower_bound * 5);
        }
    }

    #[test]
    fn reductions() {
        let lim = OracleLimits::default();
        for seed in 0..4 {
            let inst = gen_random_metric(8, seed, Orientation::Undirected).unwrap();
            let r = approx3(&inst, 4).unwrap().solution;
            let out = reduce_degree_undirected(&inst, &r, 4).unwrap();
            assert!(out.weight() <= r.weight());
            let tsp = exact_connected_dfactor(&inst, 2, ConnClass::Connected, &lim).unwrap();
            assert!(out.weight() >= tsp.weight());

            let dir = gen_random_metric(6, seed, Orientation::Directed).unwrap();
            let r = approx_r_plus_1(&dir, 2, TourStrategy::CycleCoverLog).unwrap().solution;
            let out = reduce_degree_directed(&dir, &r, 2).unwrap();
            assert!(out.is_regular(1) && out.is_connected());
        }
        let full = Instance::uniform(Orientation::Directed, 4, 1).unwrap();
        let r = Subgraph::from_edges(&full, (0..4).flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b)))).unwrap();
        let out = reduce_degree_directed(&full, &r, 3).unwrap();
        assert!(out.is_regular(2) && out.is_connected());
        let circ = Instance::uniform(Orientation::Directed, 5, 1).unwrap();
        let r = Subgraph::from_edges(&circ, (0..5).flat_map(|a| [(a, (a + 1) % 5), (a, (a + 2) % 5)])).unwrap();
        assert_eq!(reduce_degree_directed(&circ, &r, 2).unwrap().weight(), 5);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [
            Algorithm::Auto,
            Algorithm::Approx3,
            Algorithm::RPlusOne(TourStrategy::Exact),
            Algorithm::LargeD,
            Algorithm::Factor,
            Algorithm::MaxArcs,
        ] {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
    }
}
