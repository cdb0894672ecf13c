//! Instance families: tightness gadgets, reduction blow-ups, and seeded
//! random instances. Every generator that records a feasible solution
//! verifies it before returning.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::euler::euler_shortcut;
use crate::graph::{Edge, Instance, Orientation, SparseGraph, Subgraph, Tour, Weight, WeightedGraph};
use crate::metric::{complete_matrix, metric_completion};
use crate::verify::{verify_edges, VerifyClass};

/// Where a recorded value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Established by the construction's proof.
    Proof,
    /// Computed and checked at generation time.
    Computed,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Proof => "proof",
            Source::Computed => "computed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownValue {
    pub quantity: String,
    pub value: Weight,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetMeta {
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub known_values: Vec<KnownValue>,
    /// A feasible solution whose weight is one of the known values.
    pub witness: Option<Vec<Edge>>,
}

impl GadgetMeta {
    fn new(family: &str, params: &[(&str, i64)]) -> Self {
        GadgetMeta {
            family: family.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            ..GadgetMeta::default()
        }
    }

    fn known(&mut self, quantity: &str, value: Weight, source: Source) {
        self.known_values.push(KnownValue {
            quantity: quantity.to_string(),
            value,
            source,
        });
    }

    pub fn value(&self, quantity: &str) -> Option<Weight> {
        self.known_values.iter().find(|k| k.quantity == quantity).map(|k| k.value)
    }
}

fn odd_degree_only(d: usize) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::OddDegreeOnly);
    }
    Ok(())
}

/// Erdős–Gallai test for a degree sequence.
pub fn is_graphic(seq: &[usize]) -> bool {
    let mut s: Vec<usize> = seq.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    let n = s.len();
    if s.iter().sum::<usize>() % 2 == 1 || s.first().is_some_and(|&x| x >= n) {
        return false;
    }
    let mut left = 0;
    for k in 1..=n {
        left += s[k - 1];
        let right = k * (k - 1) + s[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if left > right {
            return false;
        }
    }
    true
}

/// Simple graph on `verts` where `verts[i]` gets degree `need[i]`, by
/// Havel–Hakimi (largest remaining need first, ties to the smaller index).
pub fn realize_degrees(verts: &[usize], need: &[usize]) -> Result<Vec<Edge>> {
    if !is_graphic(need) {
        return Err(Error::Infeasible);
    }
    let mut rest: Vec<(usize, usize)> = need.iter().copied().zip(verts.iter().copied()).collect();
    let mut out = Vec::new();
    loop {
        rest.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (k, v) = rest[0];
        if k == 0 {
            break;
        }
        if k >= rest.len() {
            return Err(Error::Internal("Havel–Hakimi ran out of partners".into()));
        }
        rest[0].0 = 0;
        for item in rest.iter_mut().skip(1).take(k) {
            if item.0 == 0 {
                return Err(Error::Internal("Havel–Hakimi ran out of partners".into()));
            }
            item.0 -= 1;
            out.push((v.min(item.1), v.max(item.1)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn check_witness(inst: &Instance, edges: &[Edge], d: usize, class: VerifyClass, weight: Weight) -> Result<()> {
    verify_edges(inst, edges, Some(weight), d, class).into_result()
}

/// `k` groups of `d + 1` vertices, weight 0 inside a group and 1 across.
pub fn gen_groups(k: usize, d: usize) -> Result<(Instance, GadgetMeta)> {
    if k < 2 || d < 2 {
        return Err(Error::Precondition("groups need k >= 2 and d >= 2".into()));
    }
    let s = d + 1;
    let n = k * s;
    let inst = Instance::from_fn(Orientation::Undirected, n, |u, v| Weight::from(u / s != v / s))?;
    // each group is K_{d+1} minus {a_g, b_g}; b_g joins a_{g+1}
    let mut witness = Vec::new();
    for g in 0..k {
        let base = g * s;
        for u in base..base + s {
            for v in u + 1..base + s {
                if (u, v) != (base, base + 1) {
                    witness.push((u, v));
                }
            }
        }
        let next = ((g + 1) % k) * s;
        witness.push(((base + 1).min(next), (base + 1).max(next)));
    }
    witness.sort_unstable();
    check_witness(&inst, &witness, d, VerifyClass::TwoEdgeConnected, k as Weight)?;
    let mut meta = GadgetMeta::new("groups", &[("k", k as i64), ("d", d as i64), ("n", n as i64)]);
    meta.known("mst_weight", k as Weight - 1, Source::Proof);
    meta.known("rcs_feasible_weight", k as Weight, Source::Proof);
    meta.witness = Some(witness);
    Ok((inst, meta))
}

/// Central vertex 0 at distance 1 from everything, plus `d` sets of
/// `set_size` vertices: 0 inside a set, 2 between sets.
pub fn gen_star(d: usize, set_size: usize) -> Result<(Instance, GadgetMeta)> {
    odd_degree_only(d)?;
    if set_size != d + 1 && set_size != d + 2 {
        return Err(Error::Precondition(format!("set size must be d+1 or d+2, got {set_size}")));
    }
    let n = 1 + d * set_size;
    let set_of = |x: usize| (x - 1) / set_size;
    let inst = Instance::from_fn(Orientation::Undirected, n, |u, v| {
        if u == 0 || v == 0 {
            1
        } else if set_of(u) == set_of(v) {
            0
        } else {
            2
        }
    })?;
    if !inst.is_metric() {
        return Err(Error::Internal("star gadget is not metric".into()));
    }
    let mut meta = GadgetMeta::new("star", &[("d", d as i64), ("set_size", set_size as i64), ("n", n as i64)]);
    if set_size == d + 2 {
        if set_size.is_multiple_of(2) {
            return Err(Error::Internal("star sets must have odd size".into()));
        }
        // v joins the first vertex of every set; each set completes itself
        let mut witness = Vec::new();
        for i in 0..d {
            let verts: Vec<usize> = (1 + i * set_size..1 + (i + 1) * set_size).collect();
            witness.push((0, verts[0]));
            let mut need = vec![d; set_size];
            need[0] = d - 1;
            witness.extend(realize_degrees(&verts, &need)?);
        }
        witness.sort_unstable();
        check_witness(&inst, &witness, d, VerifyClass::Connected, d as Weight)?;
        meta.known("rcs_weight", d as Weight, Source::Proof);
        meta.known("r2cs_weight", 3 * d as Weight, Source::Proof);
        meta.known("tsp_lower_bound", 2 * d as Weight, Source::Proof);
        meta.known("rcs_d_minus_2_lower_bound", d as Weight + 2, Source::Proof);
        meta.witness = Some(witness);
    }
    Ok((inst, meta))
}

/// Layout of the chain gadget: `A`, three rows of `m - 1` gadgets, `B`.
#[derive(Debug, Clone)]
pub struct ChainLayout {
    pub d: usize,
    pub m: usize,
    /// First vertex and size per gadget; index 0 is `A`, the last is `B`,
    /// row `i` position `j` is `1 + i * (m - 1) + j`.
    pub gadgets: Vec<(usize, usize)>,
    /// Gadget pairs at distance 1.
    pub links: Vec<(usize, usize)>,
}

impl ChainLayout {
    pub fn new(d: usize, m: usize) -> Self {
        let count = 3 * m - 1;
        let mut gadgets = Vec::with_capacity(count);
        let mut next = 0;
        for g in 0..count {
            let size = if g == 0 || g == count - 1 { d + 2 } else { d + 1 };
            gadgets.push((next, size));
            next += size;
        }
        let u = |i: usize, j: usize| 1 + i * (m - 1) + j;
        let b = count - 1;
        let mut links = Vec::new();
        for i in 0..3 {
            links.push((0, u(i, 0)));
            for j in 0..m - 2 {
                links.push((u(i, j), u(i, j + 1)));
            }
            links.push((u(i, m - 2), b));
        }
        ChainLayout { d, m, gadgets, links }
    }

    pub fn n(&self) -> usize {
        self.gadgets.iter().map(|g| g.1).sum()
    }

    pub fn vertices(&self, g: usize) -> std::ops::Range<usize> {
        let (s, len) = self.gadgets[g];
        s..s + len
    }
}

/// Three parallel chains of gadgets between `A` and `B`, unit weights
/// between linked gadgets, 0 inside gadgets, shortest paths elsewhere.
pub fn gen_chain(d: usize, m: usize) -> Result<(Instance, GadgetMeta)> {
    odd_degree_only(d)?;
    if m < 2 {
        return Err(Error::Precondition("chain needs m >= 2".into()));
    }
    let lay = ChainLayout::new(d, m);
    let n = lay.n();
    let mut skeleton = WeightedGraph::new(n);
    for g in 0..lay.gadgets.len() {
        for u in lay.vertices(g) {
            for v in u + 1..lay.vertices(g).end {
                skeleton.add_edge(u, v, 0);
            }
        }
    }
    for &(a, b) in &lay.links {
        for u in lay.vertices(a) {
            for v in lay.vertices(b) {
                skeleton.add_edge(u, v, 1);
            }
        }
    }
    let inst = metric_completion(&skeleton)?;

    // disjoint unit edges, then each gadget completes its own degrees
    let mut used = vec![0usize; lay.gadgets.len()];
    let mut witness = Vec::new();
    let mut need = vec![d; n];
    for &(a, b) in &lay.links {
        let u = lay.gadgets[a].0 + used[a];
        let v = lay.gadgets[b].0 + used[b];
        used[a] += 1;
        used[b] += 1;
        need[u] -= 1;
        need[v] -= 1;
        witness.push((u.min(v), u.max(v)));
    }
    for g in 0..lay.gadgets.len() {
        let verts: Vec<usize> = lay.vertices(g).collect();
        let local: Vec<usize> = verts.iter().map(|&v| need[v]).collect();
        witness.extend(realize_degrees(&verts, &local)?);
    }
    witness.sort_unstable();
    check_witness(&inst, &witness, d, VerifyClass::TwoEdgeConnected, 3 * m as Weight)?;

    let mut meta = GadgetMeta::new("chain", &[("d", d as i64), ("m", m as i64), ("n", n as i64)]);
    meta.known("r2cs_feasible_weight", 3 * m as Weight, Source::Proof);
    meta.known("tsp_lower_bound", 4 * m as Weight - 2, Source::Proof);
    meta.known("ab_distance", m as Weight, Source::Proof);
    meta.witness = Some(witness);
    Ok((inst, meta))
}

/// Each base vertex `v` becomes `d + 1` copies `v * (d + 1) + i`; copies of
/// one vertex are at distance 0, copies of different vertices inherit the
/// base weight. Copy 0 plays the role of `v_1`, copy 1 of `v_2`.
pub fn gen_tsp_reduction(base: &Instance, d: usize) -> Result<(Instance, GadgetMeta)> {
    if base.is_directed() {
        return Err(Error::Orientation("the blow-up needs an undirected base"));
    }
    if !base.is_metric() {
        return Err(Error::MetricRequired);
    }
    if d < 2 {
        return Err(Error::Precondition("blow-up needs d >= 2".into()));
    }
    let s = d + 1;
    let n = base.n() * s;
    let inst = Instance::from_fn(Orientation::Undirected, n, |x, y| base.weight(x / s, y / s))?;
    let meta = GadgetMeta::new(
        "tsp-reduction",
        &[("d", d as i64), ("base_n", base.n() as i64), ("n", n as i64)],
    );
    Ok((inst, meta))
}

/// Connected d-factor of the blow-up with the weight of `tour`.
pub fn tour_to_factor(blow: &Instance, tour: &Tour, d: usize) -> Result<Subgraph> {
    if d < 2 {
        return Err(Error::Precondition("tour_to_factor needs d >= 2".into()));
    }
    let s = d + 1;
    let k = tour.len();
    if blow.n() != k * s {
        return Err(Error::Precondition("tour does not match the blow-up".into()));
    }
    // start at 0, head toward the smaller neighbour
    let mut order = tour.order().to_vec();
    let at = order.iter().position(|&v| v == 0).unwrap_or(0);
    order.rotate_left(at);
    if k > 2 && order[k - 1] < order[1] {
        order[1..].reverse();
    }
    let mut edges = Vec::with_capacity(k * s * d / 2);
    for i in 0..k {
        let (u, v) = (order[i], order[(i + 1) % k]);
        edges.push((u * s, v * s + 1));
    }
    for v in 0..k {
        for a in 0..s {
            for b in a + 1..s {
                if (a, b) != (0, 1) {
                    edges.push((v * s + a, v * s + b));
                }
            }
        }
    }
    Subgraph::from_edges(blow, edges)
}

/// Base tour no heavier than the blow-up factor `r`: collapse copies,
/// keep cross edges as an Eulerian multigraph, shortcut.
pub fn factor_to_tour(base: &Instance, r: &Subgraph, d: usize) -> Result<Tour> {
    let s = d + 1;
    if r.n() != base.n() * s || !r.is_regular(d) {
        return Err(Error::Precondition("not a d-factor of the blow-up".into()));
    }
    let multi: Vec<Edge> = r
        .edges()
        .map(|(x, y)| (x / s, y / s))
        .filter(|&(u, v)| u != v)
        .collect();
    euler_shortcut(base, &multi)
}

/// Hamiltonicity-to-connected-factor reduction graph.
///
/// A d-expansion of `v` attaches `K_{d+1}` minus a matching of size
/// `ceil(d/2) - 1`, joining every vertex that lost an edge to `v`. Even
/// `d` expands every vertex; odd `d` first hangs `d - 2` new vertices off
/// each vertex and expands those. Original vertices keep their indices.
pub fn gen_d_expansion(g: &SparseGraph, d: usize) -> Result<(SparseGraph, GadgetMeta)> {
    if d < 3 {
        return Err(Error::UnsupportedDegree(format!("d-expansion needs d >= 3, got {d}")));
    }
    let n = g.n();
    let mut edges: Vec<Edge> = g.edges().collect();
    let mut next = n;
    let removed = d.div_ceil(2) - 1;
    let expand = |v: usize, next: &mut usize, edges: &mut Vec<Edge>| {
        let first = *next;
        *next += d + 1;
        for a in 0..=d {
            for b in a + 1..=d {
                let in_matching = a % 2 == 0 && b == a + 1 && a / 2 < removed;
                if !in_matching {
                    edges.push((first + a, first + b));
                }
            }
        }
        for a in 0..2 * removed {
            edges.push((v, first + a));
        }
    };
    if d.is_multiple_of(2) {
        for v in 0..n {
            expand(v, &mut next, &mut edges);
        }
    } else {
        for v in 0..n {
            for _ in 0..d - 2 {
                let u = next;
                next += 1;
                edges.push((v, u));
                expand(u, &mut next, &mut edges);
            }
        }
    }
    let out = SparseGraph::from_edges(next, edges)?;
    let mut meta = GadgetMeta::new("d-expansion", &[("d", d as i64), ("base_n", n as i64), ("n", next as i64)]);
    let expected = if d.is_multiple_of(2) { (d + 2) * n } else { n * (1 + (d - 2) * (d + 2)) };
    if next != expected {
        return Err(Error::Internal(format!("expansion has {next} vertices, expected {expected}")));
    }
    meta.known("vertex_count", next as Weight, Source::Proof);
    meta.known("hamiltonian_iff_rcs_d", 1, Source::Proof);
    Ok((out, meta))
}

/// Random complete instance with weights drawn from `[1, 100]` and closed
/// under shortest paths. Directed mode samples both directions
/// independently.
pub fn gen_random_metric(n: usize, seed: u64, orientation: Orientation) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidInstance(format!("n = {n} is too small")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let x = rng.gen_range(1..=100);
            w[u * n + v] = x;
            w[v * n + u] = if orientation.is_directed() { rng.gen_range(1..=100) } else { x };
        }
    }
    complete_matrix(orientation, n, w)
}

/// Random complete instance with independent weights in `[0, 100]` and no
/// closure, so the triangle inequality usually fails.
pub fn gen_random_weights(n: usize, seed: u64, orientation: Orientation) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let x = rng.gen_range(0..=100);
            w[u * n + v] = x;
            w[v * n + u] = if orientation.is_directed() { rng.gen_range(0..=100) } else { x };
        }
    }
    Instance::new(orientation, n, w)
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn gen_random_sparse(n: usize, p: f64, seed: u64) -> SparseGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SparseGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Two disjoint cliques on `0..a` and `a..a+b` plus the given cross edges.
pub fn two_cliques(a: usize, b: usize, cross: &[Edge]) -> Result<SparseGraph> {
    let mut g = SparseGraph::new(a + b);
    for (lo, hi) in [(0, a), (a, a + b)] {
        for u in lo..hi {
            for v in u + 1..hi {
                g.add_edge(u, v)?;
            }
        }
    }
    for &(u, v) in cross {
        g.add_edge(u, v)?;
    }
    Ok(g)
}
