mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfactor::connfactor::{decide_half, solve, Algorithm, HalfDecision};
use cfactor::instances::{
    gen_chain, gen_d_expansion, gen_groups, gen_random_metric, gen_random_sparse, gen_random_weights, gen_star,
    gen_tsp_reduction, GadgetMeta,
};
use cfactor::io::{
    parse_graph, parse_instance, parse_solution, write_graph, write_instance, write_meta, write_solution, SolutionFile,
};
use cfactor::oracle::{exact_connected_dfactor, exact_directed, ConnClass, OracleLimits};
use cfactor::{verify_edges, Error, Instance, Orientation, Sense, TourStrategy, VerifyClass};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

#[derive(Parser)]
#[command(name = "cfactor", version, about = "Connected d-regular spanning subgraphs: solvers, oracles, generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance (CFI) or graph (CFG) plus a `.meta` sidecar.
    Gen(GenArgs),
    /// Solve an instance and print a CFS solution.
    Solve(SolveArgs),
    /// Check a CFS solution against an instance.
    Verify(VerifyArgs),
    /// Exact optimum on a small instance.
    Oracle(OracleArgs),
    /// Decide whether a graph has a connected d-factor for d = ceil(n/2) - 1.
    DecideHalf(DecideArgs),
    /// Run a benchmark suite and print CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Groups,
    Star3,
    Star9,
    Chain,
    TspReduction,
    DExpansion,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(short = 'd', long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    set_size: Option<usize>,
    /// Random family: directed instance.
    #[arg(long)]
    directed: bool,
    /// Random family: skip the shortest-path closure.
    #[arg(long)]
    non_metric: bool,
    /// tsp-reduction: base instance (default: random metric with --n, --seed).
    #[arg(long)]
    base: Option<PathBuf>,
    /// d-expansion: base graph (default: random graph with --n, --seed, --p).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// d-expansion: edge probability of the random base graph.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short = 'd', long)]
    d: usize,
    /// auto, approx3, r-plus-1, large-d, factor or max-arcs.
    #[arg(long, default_value = "auto")]
    alg: String,
    /// Tour strategy for r-plus-1: double-tree, christofides, cycle-cover or exact.
    #[arg(long)]
    tsp: Option<String>,
    instance: PathBuf,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short = 'd', long)]
    d: usize,
    /// factor, connected, two-edge-connected or directed-connected.
    #[arg(long, default_value = "connected")]
    class: String,
    instance: PathBuf,
    solution: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(short = 'd', long)]
    d: usize,
    #[arg(long, conflicts_with = "directed")]
    two_edge_connected: bool,
    /// Require a directed instance.
    #[arg(long)]
    directed: bool,
    /// Maximize instead of minimize (directed only).
    #[arg(long, requires = "directed")]
    max: bool,
    /// Give up after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    instance: PathBuf,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(short = 'd', long)]
    d: usize,
    graph: PathBuf,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_infeasible() {
            1
        } else if matches!(e, Error::Internal(_)) {
            3
        } else {
            2
        };
        Failure { code, msg: e.to_string() }
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this family")))
}

fn keep_values(meta: &mut GadgetMeta, family: &str, quantities: &[&str]) {
    meta.family = family.to_string();
    meta.known_values.retain(|kv| quantities.contains(&kv.quantity.as_str()));
}

fn run_gen(a: GenArgs) -> Result<ExitCode, Failure> {
    enum Out {
        Inst(Instance),
        Graph(cfactor::SparseGraph),
    }
    let (out, meta) = match a.family {
        Family::Groups => {
            let (i, m) = gen_groups(need(a.k, "k")?, need(a.d, "d")?)?;
            (Out::Inst(i), m)
        }
        Family::Star3 | Family::Star9 => {
            let d = need(a.d, "d")?;
            let (i, mut m) = gen_star(d, a.set_size.unwrap_or(d + 2))?;
            if matches!(a.family, Family::Star3) {
                keep_values(&mut m, "star3", &["rcs_weight", "r2cs_weight", "tsp_lower_bound"]);
            } else {
                keep_values(&mut m, "star9", &["rcs_weight", "rcs_d_minus_2_lower_bound"]);
            }
            (Out::Inst(i), m)
        }
        Family::Chain => {
            let (i, m) = gen_chain(need(a.d, "d")?, need(a.m, "m")?)?;
            (Out::Inst(i), m)
        }
        Family::TspReduction => {
            let base = match &a.base {
                Some(p) => load_instance(p)?,
                None => gen_random_metric(need(a.n, "n")?, a.seed, Orientation::Undirected)?,
            };
            let (i, m) = gen_tsp_reduction(&base, need(a.d, "d")?)?;
            (Out::Inst(i), m)
        }
        Family::DExpansion => {
            let g = match &a.graph {
                Some(p) => parse_graph(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
                None => gen_random_sparse(need(a.n, "n")?, a.p, a.seed),
            };
            let (g, m) = gen_d_expansion(&g, need(a.d, "d")?)?;
            (Out::Graph(g), m)
        }
        Family::Random => {
            let n = need(a.n, "n")?;
            let orientation = if a.directed { Orientation::Directed } else { Orientation::Undirected };
            let i = if a.non_metric {
                gen_random_weights(n, a.seed, orientation)?
            } else {
                gen_random_metric(n, a.seed, orientation)?
            };
            let mut m = GadgetMeta {
                family: "random".into(),
                ..GadgetMeta::default()
            };
            m.params.insert("n".into(), n as i64);
            m.params.insert("seed".into(), a.seed as i64);
            m.params.insert("directed".into(), i64::from(a.directed));
            m.params.insert("metric".into(), i64::from(!a.non_metric));
            (Out::Inst(i), m)
        }
    };
    let text = match out {
        Out::Inst(i) => write_instance(&i),
        Out::Graph(g) => write_graph(&g),
    };
    emit(Some(&a.output), &text)?;
    emit(Some(&a.output.with_extension("meta")), &write_meta(&meta))?;
    Ok(ExitCode::SUCCESS)
}

fn run_solve(a: SolveArgs) -> Result<ExitCode, Failure> {
    let inst = load_instance(&a.instance)?;
    let mut alg: Algorithm = a.alg.parse()?;
    if let Some(t) = &a.tsp {
        let strat: TourStrategy = t.parse()?;
        alg = match alg {
            Algorithm::RPlusOne(_) => Algorithm::RPlusOne(strat),
            _ => return Err(usage("--tsp only applies to --alg r-plus-1")),
        };
    }
    let rep = solve(&inst, a.d, alg)?;
    emit(a.output.as_deref(), &write_solution(&SolutionFile::from(&rep)))?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: VerifyArgs) -> Result<ExitCode, Failure> {
    let inst = load_instance(&a.instance)?;
    let sol = parse_solution(&read(&a.solution)?).map_err(|e| usage(format!("{}: {e}", a.solution.display())))?;
    let class: VerifyClass = a.class.parse()?;
    let rep = verify_edges(&inst, &sol.edges, Some(sol.weight), a.d, class);
    print!("{rep}");
    Ok(if rep.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_oracle(a: OracleArgs) -> Result<ExitCode, Failure> {
    let inst = load_instance(&a.instance)?;
    if a.directed != inst.is_directed() {
        return Err(usage(if a.directed {
            "--directed given for an undirected instance"
        } else {
            "directed instance needs --directed"
        }));
    }
    let limits = OracleLimits {
        time_budget: a.time_limit.map(std::time::Duration::from_secs_f64),
        ..OracleLimits::default()
    };
    let sub = if a.directed {
        exact_directed(&inst, a.d, if a.max { Sense::Max } else { Sense::Min }, &limits)?
    } else {
        let class = if a.two_edge_connected { ConnClass::TwoEdgeConnected } else { ConnClass::Connected };
        exact_connected_dfactor(&inst, a.d, class, &limits)?
    };
    let sol = SolutionFile {
        weight: sub.weight(),
        algorithm: "oracle".into(),
        claimed_ratio: Rational64::from_integer(1),
        lower_bound: sub.weight(),
        edges: sub.edge_vec(),
    };
    emit(a.output.as_deref(), &write_solution(&sol))?;
    Ok(ExitCode::SUCCESS)
}

fn run_decide(a: DecideArgs) -> Result<ExitCode, Failure> {
    let g = parse_graph(&read(&a.graph)?).map_err(|e| usage(format!("{}: {e}", a.graph.display())))?;
    match decide_half(&g, a.d)? {
        HalfDecision::Yes(f) => {
            println!("yes");
            emit(a.output.as_deref(), &write_graph(&f))?;
            Ok(ExitCode::SUCCESS)
        }
        HalfDecision::No(w) => {
            println!("no {w}");
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => run_gen(a),
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Oracle(a) => run_oracle(a),
        Command::DecideHalf(a) => run_decide(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("cfactor: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
