//! Tour providers: double tree, Christofides, repeated cycle covers for
//! asymmetric instances, exact Held–Karp, and tours from cubic bridgeless
//! subgraphs.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::decomposition::two_edge_decomposition;
use crate::error::{Error, Result};
use crate::euler::euler_shortcut;
use crate::factors::{directed_dfactor, FactorSpec};
use crate::graph::{Edge, Instance, Subgraph, Tour, Weight};
use crate::matching::min_matching_on;
use crate::mst::mst;

/// Largest instance [`held_karp`] accepts.
pub const HELD_KARP_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TourStrategy {
    DoubleTree,
    Christofides,
    CycleCoverLog,
    Exact,
}

impl TourStrategy {
    /// Guaranteed ratio on an `n`-vertex metric instance. The cycle-cover
    /// scheme runs at most `floor(log2 n)` rounds, each costing at most OPT.
    pub fn ratio(self, n: usize) -> Rational64 {
        match self {
            TourStrategy::DoubleTree => Rational64::from_integer(2),
            TourStrategy::Christofides => Rational64::new(3, 2),
            TourStrategy::CycleCoverLog => Rational64::from_integer(i64::from(n.max(2).ilog2())),
            TourStrategy::Exact => Rational64::from_integer(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TourStrategy::DoubleTree => "double-tree",
            TourStrategy::Christofides => "christofides",
            TourStrategy::CycleCoverLog => "cycle-cover",
            TourStrategy::Exact => "exact",
        }
    }

    pub fn supports(self, directed: bool) -> bool {
        match self {
            TourStrategy::DoubleTree | TourStrategy::Christofides => !directed,
            TourStrategy::CycleCoverLog => directed,
            TourStrategy::Exact => true,
        }
    }
}

impl fmt::Display for TourStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TourStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double-tree" => Ok(TourStrategy::DoubleTree),
            "christofides" => Ok(TourStrategy::Christofides),
            "cycle-cover" => Ok(TourStrategy::CycleCoverLog),
            "exact" => Ok(TourStrategy::Exact),
            other => Err(Error::Precondition(format!("unknown tour strategy `{other}`"))),
        }
    }
}

/// Runs `strat` on `inst`.
pub fn tour(inst: &Instance, strat: TourStrategy) -> Result<Tour> {
    match strat {
        TourStrategy::DoubleTree => double_tree(inst),
        TourStrategy::Christofides => christofides(inst),
        TourStrategy::CycleCoverLog => atsp_cycle_cover(inst),
        TourStrategy::Exact => held_karp(inst),
    }
}

fn require_metric(inst: &Instance) -> Result<()> {
    if inst.is_metric() {
        Ok(())
    } else {
        Err(Error::MetricRequired)
    }
}

pub fn double_tree(inst: &Instance) -> Result<Tour> {
    require_metric(inst)?;
    let t = mst(inst)?;
    let doubled: Vec<Edge> = t.edges().chain(t.edges()).collect();
    euler_shortcut(inst, &doubled)
}

pub fn christofides(inst: &Instance) -> Result<Tour> {
    require_metric(inst)?;
    let t = mst(inst)?;
    let odd: Vec<usize> = (0..inst.n()).filter(|&v| t.degree(v) % 2 == 1).collect();
    let mut multi: Vec<Edge> = t.edge_vec();
    multi.extend(min_matching_on(inst, &odd)?);
    euler_shortcut(inst, &multi)
}

/// Repeated minimum cycle covers on one representative (smallest index)
/// per cycle until a single representative is left; the union of all
/// covers is Eulerian and is shortcut into a tour.
pub fn atsp_cycle_cover(inst: &Instance) -> Result<Tour> {
    if !inst.is_directed() {
        return Err(Error::Orientation("cycle-cover tours need a directed instance"));
    }
    require_metric(inst)?;
    let mut reps: Vec<usize> = (0..inst.n()).collect();
    let mut arcs = Vec::new();
    while reps.len() > 1 {
        let sub = inst.restrict(&reps)?;
        let cover = directed_dfactor(&sub, FactorSpec::min(1))?;
        arcs.extend(cover.edges().map(|(i, j)| (reps[i], reps[j])));
        reps = cover.components().iter().map(|c| reps[c[0]]).collect();
        reps.sort_unstable();
    }
    euler_shortcut(inst, &arcs)
}

/// Exact optimum by dynamic programming over subsets, rooted at vertex 0.
pub fn held_karp(inst: &Instance) -> Result<Tour> {
    let n = inst.n();
    if n > HELD_KARP_MAX_N {
        return Err(Error::OracleSizeLimit { n, max: HELD_KARP_MAX_N });
    }
    if n == 2 {
        return Tour::new(inst, vec![0, 1]);
    }
    // paths from 0 over subsets of 1..n (bit i-1 for vertex i)
    let m = n - 1;
    let full = (1usize << m) - 1;
    let inf = Weight::MAX;
    let mut dp = vec![inf; (1 << m) * m];
    let mut parent = vec![u8::MAX; (1 << m) * m];
    for j in 0..m {
        dp[(1 << j) * m + j] = inst.weight(0, j + 1);
    }
    for mask in 1..=full {
        for j in 0..m {
            let cur = dp[mask * m + j];
            if cur == inf || mask >> j & 1 == 0 {
                continue;
            }
            for k in 0..m {
                if mask >> k & 1 == 1 {
                    continue;
                }
                let next = mask | 1 << k;
                let cand = cur + inst.weight(j + 1, k + 1);
                if cand < dp[next * m + k] {
                    dp[next * m + k] = cand;
                    parent[next * m + k] = j as u8;
                }
            }
        }
    }
    let (mut last, mut best) = (0, inf);
    for j in 0..m {
        let c = dp[full * m + j] + inst.weight(j + 1, 0);
        if c < best {
            best = c;
            last = j;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut j = last;
    loop {
        order.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    order.push(0);
    order.reverse();
    let t = Tour::new(inst, order)?;
    debug_assert_eq!(t.weight(), best);
    Ok(t)
}

/// Tour from a 3-regular 2-edge-connected spanning subgraph `r`: add a
/// minimum perfect matching of the whole instance, then shortcut the
/// resulting connected 4-regular multigraph.
pub fn tour_from_cubic_2ec(inst: &Instance, r: &Subgraph) -> Result<Tour> {
    if inst.is_directed() || r.is_directed() {
        return Err(Error::Orientation("cubic tours need an undirected instance"));
    }
    require_metric(inst)?;
    if r.n() != inst.n() || !r.is_regular(3) || !two_edge_decomposition(r)?.is_two_edge_connected() {
        return Err(Error::NotCubic2ec);
    }
    let all: Vec<usize> = (0..inst.n()).collect();
    let mut multi = r.edge_vec();
    multi.extend(min_matching_on(inst, &all)?);
    euler_shortcut(inst, &multi)
}
