//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::Instant;

use cfactor::connfactor::{
    approx3, approx_r_plus_1, decide_half, is_cut_vertex, max_arcs_approx, reduce_degree_directed,
    reduce_degree_undirected, HalfDecision, HalfWitness,
};
use cfactor::factors::{directed_dfactor, min_dfactor};
use cfactor::instances::{
    factor_to_tour, gen_chain, gen_groups, gen_random_metric, gen_random_sparse, gen_random_weights, gen_star,
    gen_tsp_reduction, tour_to_factor, two_cliques,
};
use cfactor::matching::{perfect_matching, MatchingProblem};
use cfactor::mst::mst;
use cfactor::oracle::{exact_connected_dfactor, exact_directed, sparse_connected_dfactor, ConnClass, OracleLimits};
use cfactor::tours::{christofides, double_tree, held_karp, tour_from_cubic_2ec, TourStrategy};
use cfactor::{
    verify_edges, verify_subgraph, Edge, FactorSpec, Instance, Orientation, Sense, SparseGraph, Subgraph,
    VerifyClass, Weight,
};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Maps `f` over `items` on all cores, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn verified(inst: &Instance, sub: &Subgraph, d: usize, class: VerifyClass) -> Result<(), String> {
    let rep = verify_subgraph(inst, sub, d, class);
    check!(rep.passed(), "verification failed:\n{rep}");
    Ok(())
}

struct Case {
    inst: Instance,
    d: usize,
    seed: u64,
}

/// The shared random undirected suite: 200 metric instances cycling
/// through n in {6, 8, 10} and d in {3, 4}.
fn undirected_suite() -> Vec<Case> {
    (0..200u64)
        .map(|i| {
            let n = [6, 8, 10][(i % 3) as usize];
            let d = [3, 4][((i / 3) % 2) as usize];
            let seed = 1000 + i;
            Case {
                inst: gen_random_metric(n, seed, Orientation::Undirected).unwrap(),
                d,
                seed,
            }
        })
        .collect()
}

/// Random directed metric instances, n in {5, 6}, d in {1, 2}.
fn directed_suite(count: u64, base: u64) -> Vec<Case> {
    (0..count)
        .map(|i| {
            let n = [5, 6][(i % 2) as usize];
            let d = [1, 2][((i / 2) % 2) as usize];
            let seed = base + i;
            Case {
                inst: gen_random_metric(n, seed, Orientation::Directed).unwrap(),
                d,
                seed,
            }
        })
        .collect()
}

fn criterion_1(suite: &[Case], opts: &[Weight]) -> Outcome {
    let results = par_map(&suite.iter().zip(opts).collect::<Vec<_>>(), |(c, &opt)| -> Result<(Weight, Weight), String> {
        let rep = ok(approx3(&c.inst, c.d), &format!("approx3 seed {}", c.seed))?;
        verified(&c.inst, &rep.solution, c.d, VerifyClass::TwoEdgeConnected)?;
        check!(
            rep.weight() <= 3 * opt,
            "seed {} n={} d={}: weight {} > 3 * {opt}",
            c.seed,
            c.inst.n(),
            c.d,
            rep.weight()
        );
        Ok((rep.weight(), opt))
    });
    let mut worst = (0, 1);
    for r in results {
        let (w, o) = r?;
        if w * worst.1 > worst.0 * o {
            worst = (w, o);
        }
    }
    Ok(format!("{} instances, worst weight/opt {}/{}", suite.len(), worst.0, worst.1))
}

fn criterion_2() -> Outcome {
    let (inst, meta) = ok(gen_star(3, 5), "gen_star")?;
    check!(inst.n() == 16, "star gadget has {} vertices", inst.n());
    let rep = ok(approx3(&inst, 3), "approx3")?;
    check!(rep.weight() == 9, "approx3 weight {} != 9", rep.weight());
    verified(&inst, &rep.solution, 3, VerifyClass::TwoEdgeConnected)?;
    let witness = meta.witness.ok_or("no recorded connected factor")?;
    let v = verify_edges(&inst, &witness, Some(3), 3, VerifyClass::Connected);
    check!(v.passed(), "weight-3 factor fails verification:\n{v}");
    Ok("approx3 weight 9, weight-3 connected factor verified".into())
}

fn criterion_3(suite: &[Case], opts: &[Weight]) -> Outcome {
    let even: Vec<(&Case, Weight)> = suite.iter().zip(opts.iter().copied()).filter(|(c, _)| c.d == 4).collect();
    let und = par_map(&even, |&(c, opt)| -> Result<(), String> {
        let exact = ok(approx_r_plus_1(&c.inst, 4, TourStrategy::Exact), "r+1 exact")?;
        verified(&c.inst, &exact.solution, 4, VerifyClass::Connected)?;
        check!(exact.weight() <= 2 * opt, "seed {}: exact-tour weight {} > 2 * {opt}", c.seed, exact.weight());
        let chr = ok(approx_r_plus_1(&c.inst, 4, TourStrategy::Christofides), "r+1 christofides")?;
        verified(&c.inst, &chr.solution, 4, VerifyClass::Connected)?;
        check!(
            2 * chr.weight() <= 5 * opt,
            "seed {}: christofides weight {} > 2.5 * {opt}",
            c.seed,
            chr.weight()
        );
        Ok(())
    });
    for r in und {
        r?;
    }
    let dir = directed_suite(60, 5000);
    let lim = OracleLimits::default();
    let res = par_map(&dir, |c| -> Result<(), String> {
        let opt = ok(exact_directed(&c.inst, c.d, Sense::Min, &lim), "directed oracle")?.weight();
        let exact = ok(approx_r_plus_1(&c.inst, c.d, TourStrategy::Exact), "r+1 exact directed")?;
        verified(&c.inst, &exact.solution, c.d, VerifyClass::DirectedConnected)?;
        check!(
            exact.weight() <= 2 * opt,
            "directed seed {} d={}: weight {} > 2 * {opt}",
            c.seed,
            c.d,
            exact.weight()
        );
        let cc = ok(approx_r_plus_1(&c.inst, c.d, TourStrategy::CycleCoverLog), "r+1 cycle cover")?;
        verified(&c.inst, &cc.solution, c.d, VerifyClass::DirectedConnected)?;
        check!(
            cc.claimed_ratio * opt >= cc.weight().into(),
            "directed seed {}: cycle-cover weight {} above {} * {opt}",
            c.seed,
            cc.weight(),
            cc.claimed_ratio
        );
        Ok(())
    });
    for r in res {
        r?;
    }
    Ok(format!("{} undirected d=4 and {} directed instances", even.len(), dir.len()))
}

fn criterion_4() -> Outcome {
    for m in 2..=4usize {
        let (inst, meta) = ok(gen_chain(3, m), "gen_chain")?;
        let m = m as Weight;
        let witness = meta.witness.ok_or("no recorded 2EC factor")?;
        let v = verify_edges(&inst, &witness, Some(3 * m), 3, VerifyClass::TwoEdgeConnected);
        check!(v.passed(), "m={m}: factor of weight 3m fails verification:\n{v}");
        let dt = ok(double_tree(&inst), "double tree")?.weight();
        let ch = ok(christofides(&inst), "christofides")?.weight();
        check!(dt >= 4 * m - 2, "m={m}: double-tree tour {dt} < {}", 4 * m - 2);
        check!(ch >= 4 * m - 2, "m={m}: christofides tour {ch} < {}", 4 * m - 2);
    }
    Ok("m = 2, 3, 4".into())
}

fn criterion_5() -> Outcome {
    let cases: Vec<(usize, usize, u64)> = (0..50u64).map(|i| (5 + (i % 4) as usize, 2 + ((i / 4) % 2) as usize, 7000 + i)).collect();
    for r in par_map(&cases, |&(n, d, seed)| -> Result<(), String> {
        let base = gen_random_metric(n, seed, Orientation::Undirected).unwrap();
        let t = ok(held_karp(&base), "held_karp")?;
        let (blow, _) = ok(gen_tsp_reduction(&base, d), "gen_tsp_reduction")?;
        let f = ok(tour_to_factor(&blow, &t, d), "tour_to_factor")?;
        verified(&blow, &f, d, VerifyClass::Connected)?;
        check!(f.weight() == t.weight(), "seed {seed}: factor weight {} != tour {}", f.weight(), t.weight());
        let back = ok(factor_to_tour(&base, &f, d), "factor_to_tour")?;
        check!(back.weight() <= f.weight(), "seed {seed}: tour {} > factor {}", back.weight(), f.weight());
        Ok(())
    }) {
        r?;
    }
    Ok(format!("{} base instances", cases.len()))
}

fn criterion_6(suite: &[Case]) -> Outcome {
    let four: Vec<&Case> = suite.iter().filter(|c| c.d == 4).collect();
    for r in par_map(&four, |c| -> Result<(), String> {
        let r = ok(approx3(&c.inst, 4), "approx3")?.solution;
        let out = ok(reduce_degree_undirected(&c.inst, &r, 4), &format!("undirected reduction seed {}", c.seed))?;
        verified(&c.inst, &out, 2, VerifyClass::Connected)?;
        check!(out.weight() <= r.weight(), "seed {}: {} > {}", c.seed, out.weight(), r.weight());
        Ok(())
    }) {
        r?;
    }
    let dir: Vec<Case> = directed_suite(60, 9000).into_iter().filter(|c| c.d == 2).collect();
    for r in par_map(&dir, |c| -> Result<(), String> {
        let r = ok(approx_r_plus_1(&c.inst, 2, TourStrategy::CycleCoverLog), "r+1")?.solution;
        let out = ok(reduce_degree_directed(&c.inst, &r, 2), &format!("directed reduction seed {}", c.seed))?;
        verified(&c.inst, &out, 1, VerifyClass::DirectedConnected)?;
        check!(out.weight() <= r.weight(), "seed {}: {} > {}", c.seed, out.weight(), r.weight());
        let atsp = ok(held_karp(&c.inst), "held_karp")?.weight();
        check!(out.weight() >= atsp, "seed {}: {} below ATSP {atsp}", c.seed, out.weight());
        Ok(())
    }) {
        r?;
    }
    Ok(format!("{} undirected d=4, {} directed d=2", four.len(), dir.len()))
}

fn criterion_7() -> Outcome {
    let cases: Vec<(usize, usize, u64)> =
        (0..100u64).map(|i| ([5, 6][(i % 2) as usize], [1, 2][((i / 2) % 2) as usize], 11000 + i)).collect();
    for &(n, d, seed) in &cases {
        let inst = gen_random_weights(n, seed, Orientation::Directed).unwrap();
        let rep = ok(max_arcs_approx(&inst, d), "max_arcs_approx")?;
        verified(&inst, &rep.solution, d, VerifyClass::DirectedConnected)?;
        let fmax = ok(directed_dfactor(&inst, FactorSpec::max(d)), "max factor")?.weight();
        let dd = (d * (d + 1)) as Weight;
        check!(
            rep.weight() * dd >= (dd - 1) * fmax,
            "seed {seed}: weight {} below (1 - 1/{dd}) * {fmax}",
            rep.weight()
        );
    }
    Ok(format!("{} instances", cases.len()))
}

fn sparse_cases() -> Vec<SparseGraph> {
    let mut out = Vec::new();
    for i in 0..70u64 {
        let p = 0.35 + 0.05 * (i % 12) as f64;
        out.push(gen_random_sparse(8, p, 13000 + i));
    }
    // Two K4s with one, two or three links; some sharing an endpoint.
    let links: [&[Edge]; 6] = [
        &[(3, 4)],
        &[(0, 4), (1, 5)],
        &[(0, 4), (0, 5)],
        &[(0, 4), (0, 5), (0, 6)],
        &[(2, 7), (3, 7)],
        &[(0, 4), (1, 4), (2, 5)],
    ];
    for i in 0..30 {
        out.push(two_cliques(4, 4, links[i % links.len()]).unwrap());
    }
    out
}

fn criterion_8() -> Outcome {
    let graphs = sparse_cases();
    let lim = OracleLimits::default();
    let (mut yes, mut no) = (0, 0);
    for (i, g) in graphs.iter().enumerate() {
        let truth = ok(sparse_connected_dfactor(g, 3, &lim), "oracle")?.is_some();
        match ok(decide_half(g, 3), "decide_half")? {
            HalfDecision::Yes(f) => {
                check!(truth, "graph {i}: yes but the oracle finds none");
                check!(f.edges().all(|(u, v)| g.has_edge(u, v)), "graph {i}: certificate leaves the graph");
                check!((0..8).all(|v| f.degree(v) == 3), "graph {i}: certificate not 3-regular");
                check!(f.is_connected(), "graph {i}: certificate disconnected");
                yes += 1;
            }
            HalfDecision::No(w) => {
                check!(!truth, "graph {i}: no ({w}) but the oracle finds one");
                match w {
                    HalfWitness::Disconnected => check!(!g.is_connected(), "graph {i}: claimed disconnected"),
                    HalfWitness::NoFactor => check!(
                        no_factor_exhaustive(g, 3),
                        "graph {i}: claimed no 3-factor but one exists"
                    ),
                    HalfWitness::CutVertex(u) => check!(is_cut_vertex(g, u), "graph {i}: {u} is not a cut vertex"),
                }
                no += 1;
            }
        }
    }
    Ok(format!("{} graphs, {yes} yes / {no} no", graphs.len()))
}

/// Exhaustive check that `g` has no d-factor: zero-weight edges on a
/// complete instance, everything else weight 1.
fn no_factor_exhaustive(g: &SparseGraph, d: usize) -> bool {
    let inst = Instance::from_fn(Orientation::Undirected, g.n(), |u, v| Weight::from(!g.has_edge(u, v))).unwrap();
    match cfactor::oracle::exact_dfactor(&inst, d, &OracleLimits::default()) {
        Ok(f) => f.weight() > 0,
        Err(e) => e.is_infeasible(),
    }
}

fn criterion_9() -> Outcome {
    let lim = OracleLimits::default();
    let mut corpus: Vec<(String, Instance)> = (0..30u64)
        .map(|i| {
            let n = [6, 7, 8][(i % 3) as usize];
            (format!("random n={n} seed={}", 15000 + i), gen_random_metric(n, 15000 + i, Orientation::Undirected).unwrap())
        })
        .collect();
    for (k, d) in [(2, 2), (2, 3), (3, 2)] {
        corpus.push((format!("groups k={k} d={d}"), gen_groups(k, d).unwrap().0));
    }
    let mut cubic = 0;
    let res = par_map(&corpus, |(name, inst)| -> Result<usize, String> {
        let n = inst.n();
        let t = mst(inst).unwrap().weight();
        let tsp = ok(held_karp(inst), "held_karp")?.weight();
        let mut rcs_by_d = Vec::new();
        let mut cubic = 0;
        for d in 2..=4usize.min(n - 1) {
            if n * d % 2 == 1 {
                continue;
            }
            let rcs = ok(exact_connected_dfactor(inst, d, ConnClass::Connected, &lim), "oracle")?;
            let r2 = ok(exact_connected_dfactor(inst, d, ConnClass::TwoEdgeConnected, &lim), "oracle 2EC")?;
            let fact = ok(min_dfactor(inst, FactorSpec::min(d)), "factor")?.weight();
            let (w, w2) = (rcs.weight(), r2.weight());
            check!(t <= w && w <= w2, "{name} d={d}: MST {t}, RCS {w}, R2CS {w2} out of order");
            check!(fact <= w, "{name} d={d}: factor {fact} > RCS {w}");
            if d % 2 == 0 {
                check!(tsp <= w, "{name} d={d}: TSP {tsp} > RCS {w}");
            } else {
                check!(tsp <= 2 * w, "{name} d={d}: TSP {tsp} > 2 * RCS {w}");
            }
            if d == 3 {
                let mut subs = vec![r2];
                subs.push(ok(approx3(inst, 3), "approx3")?.solution);
                for r in &subs {
                    let tour = ok(tour_from_cubic_2ec(inst, r), "tour_from_cubic_2ec")?;
                    check!(
                        3 * tour.weight() <= 4 * r.weight(),
                        "{name}: cubic tour {} > 4/3 * {}",
                        tour.weight(),
                        r.weight()
                    );
                    cubic += 1;
                }
            }
            rcs_by_d.push((d, w));
        }
        for &(d, w) in &rcs_by_d {
            if let Some(&(_, lower)) = rcs_by_d.iter().find(|&&(e, _)| e + 2 == d && d % 2 == 0) {
                check!(lower <= w, "{name}: RCS_{} = {lower} > RCS_{d} = {w}", d - 2);
            }
        }
        Ok(cubic)
    });
    for r in res {
        cubic += r?;
    }
    for m in 2..=4 {
        let (inst, meta) = gen_chain(3, m).unwrap();
        let r = Subgraph::from_edges(&inst, meta.witness.unwrap()).unwrap();
        let tour = ok(tour_from_cubic_2ec(&inst, &r), "tour_from_cubic_2ec")?;
        check!(3 * tour.weight() <= 4 * r.weight(), "chain m={m}: cubic tour {} > 4/3 * {}", tour.weight(), r.weight());
        cubic += 1;
    }
    Ok(format!("{} instances, {cubic} cubic 2EC subgraphs", corpus.len()))
}

/// Optimal perfect matching by pairing the lowest free vertex every way.
fn brute_matching(inst: &Instance, sense: Sense) -> Weight {
    fn go(inst: &Instance, free: &mut Vec<usize>, sense: Sense) -> Weight {
        if free.is_empty() {
            return 0;
        }
        let u = free.remove(0);
        let mut best: Option<Weight> = None;
        for i in 0..free.len() {
            let v = free.remove(i);
            let w = inst.weight(u, v) + go(inst, free, sense);
            free.insert(i, v);
            best = Some(match (best, sense) {
                (None, _) => w,
                (Some(b), Sense::Min) => b.min(w),
                (Some(b), Sense::Max) => b.max(w),
            });
        }
        free.insert(0, u);
        best.unwrap()
    }
    go(inst, &mut (0..inst.n()).collect(), sense)
}

/// Optimal d-factor by edge inclusion/exclusion with degree pruning.
fn brute_factor(inst: &Instance, d: usize) -> Option<Weight> {
    let n = inst.n();
    let edges: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    // remaining[i][v]: edges at index >= i touching v.
    let mut remaining = vec![vec![0usize; n]; edges.len() + 1];
    for i in (0..edges.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        remaining[i][edges[i].0] += 1;
        remaining[i][edges[i].1] += 1;
    }
    fn go(
        inst: &Instance,
        edges: &[Edge],
        remaining: &[Vec<usize>],
        i: usize,
        deg: &mut [usize],
        d: usize,
        w: Weight,
        best: &mut Option<Weight>,
    ) {
        if deg.iter().zip(&remaining[i]).any(|(&x, &r)| x + r < d) {
            return;
        }
        if i == edges.len() {
            if best.is_none_or(|b| w < b) {
                *best = Some(w);
            }
            return;
        }
        let (u, v) = edges[i];
        if deg[u] < d && deg[v] < d {
            deg[u] += 1;
            deg[v] += 1;
            go(inst, edges, remaining, i + 1, deg, d, w + inst.weight(u, v), best);
            deg[u] -= 1;
            deg[v] -= 1;
        }
        go(inst, edges, remaining, i + 1, deg, d, w, best);
    }
    let mut best = None;
    go(inst, &edges, &remaining, 0, &mut vec![0; n], d, 0, &mut best);
    best
}

fn criterion_10() -> Outcome {
    for i in 0..100u64 {
        let n = [2, 4, 6, 8, 10][(i % 5) as usize];
        let inst = gen_random_weights(n, 17000 + i, Orientation::Undirected).unwrap();
        for sense in [Sense::Min, Sense::Max] {
            let m = ok(perfect_matching(&MatchingProblem::new(&inst, sense)), "blossom")?;
            let b = brute_matching(&inst, sense);
            check!(m.weight() == b, "seed {} n={n} {sense:?}: blossom {} != enumeration {b}", 17000 + i, m.weight());
        }
    }
    let mut factor_cases = 0;
    for i in 0..60u64 {
        let n = 4 + (i % 5) as usize;
        let inst = gen_random_weights(n, 19000 + i, Orientation::Undirected).unwrap();
        for d in 1..=3usize.min(n - 1) {
            let brute = brute_factor(&inst, d);
            match (min_dfactor(&inst, FactorSpec::min(d)), brute) {
                (Ok(f), Some(b)) => {
                    check!(f.is_regular(d), "seed {} d={d}: not regular", 19000 + i);
                    check!(f.weight() == b, "seed {} n={n} d={d}: factor {} != search {b}", 19000 + i, f.weight());
                }
                (Err(e), None) if e.is_infeasible() => {}
                (got, want) => return Err(format!("seed {} n={n} d={d}: {got:?} vs {want:?}", 19000 + i)),
            }
            factor_cases += 1;
        }
    }
    let lim = OracleLimits::default();
    let mut tours = 0;
    for i in 0..30u64 {
        let n = 4 + (i % 6) as usize;
        let inst = gen_random_metric(n, 21000 + i, Orientation::Undirected).unwrap();
        let hk = ok(held_karp(&inst), "held_karp")?.weight();
        let or = ok(exact_connected_dfactor(&inst, 2, ConnClass::Connected, &lim), "oracle")?.weight();
        check!(hk == or, "seed {} n={n}: held_karp {hk} != oracle {or}", 21000 + i);
        tours += 1;
    }
    Ok(format!("200 matchings, {factor_cases} factor cases, {tours} tour cases"))
}

fn main() {
    let start = Instant::now();
    let suite = undirected_suite();
    let lim = OracleLimits::default();
    let opts: Vec<Result<Weight, String>> = par_map(&suite, |c| {
        exact_connected_dfactor(&c.inst, c.d, ConnClass::Connected, &lim)
            .map(|s| s.weight())
            .map_err(|e| format!("oracle seed {}: {e}", c.seed))
    });
    let oracle_time = start.elapsed();
    let opts: Result<Vec<Weight>, String> = opts.into_iter().collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("ratio guarantee of the 3-approximation", Box::new(|| criterion_1(&suite, opts.as_ref().map_err(Clone::clone)?))),
        ("star gadget exactness", Box::new(criterion_2)),
        ("ratio guarantee of the (r+1)-approximation", Box::new(|| criterion_3(&suite, opts.as_ref().map_err(Clone::clone)?))),
        ("chain gadget", Box::new(criterion_4)),
        ("tour/factor round trip on blow-ups", Box::new(criterion_5)),
        ("degree reduction", Box::new(|| criterion_6(&suite))),
        ("max-weight directed approximation", Box::new(criterion_7)),
        ("near-half decision procedure", Box::new(criterion_8)),
        ("structural inequalities", Box::new(criterion_9)),
        ("engine correctness", Box::new(criterion_10)),
    ];
    println!("oracle optima for the random suite computed in {:.1?}", oracle_time);
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({:.1?})", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({:.1?})", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
