//! `cfactor bench`: runs a suite file and writes one CSV row per
//! (instance, algorithm) pair.
//!
//! Suite lines look like `random n=8 d=3 seed=1000 count=100 algs=approx3,auto`.
//! Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cfactor::connfactor::{solve, Algorithm};
use cfactor::instances::{gen_chain, gen_groups, gen_random_metric, gen_random_weights, gen_star, gen_tsp_reduction};
use cfactor::io::format_ratio;
use cfactor::oracle::{exact_connected_dfactor, exact_directed, ConnClass, OracleLimits};
use cfactor::{Error, Instance, Orientation, Sense, Weight};
use clap::Args;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::{read, usage, Failure};

#[derive(Args)]
pub struct BenchArgs {
    suite: PathBuf,
    /// Print `-` in the time column so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
    /// Per-instance oracle budget in seconds.
    #[arg(long, default_value_t = 10.0)]
    oracle_time: f64,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

const HEADER: [&str; 12] = [
    "instance",
    "algorithm",
    "n",
    "d",
    "weight",
    "lower_bound",
    "certified_ratio",
    "certified_ratio_decimal",
    "oracle_optimum",
    "ratio_vs_oracle",
    "time_ms",
    "status",
];

/// One instance to run, expanded from a suite line.
struct Job {
    id: String,
    inst: Result<Instance, Error>,
    d: usize,
    algs: Vec<Algorithm>,
    oracle: bool,
}

fn parse_line(lineno: usize, line: &str) -> Result<Vec<Job>, Failure> {
    let bad = |msg: String| usage(format!("suite line {lineno}: {msg}"));
    let mut words = line.split_whitespace();
    let family = words.next().unwrap_or_default().to_string();
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{w}`")))?;
        if kv.insert(k.to_string(), v.to_string()).is_some() {
            return Err(bad(format!("duplicate key `{k}`")));
        }
    }
    let mut take = |k: &str| kv.remove(k);
    let num = |v: Option<String>, k: &str| -> Result<Option<u64>, Failure> {
        v.map(|s| s.parse::<u64>().map_err(|_| bad(format!("`{k}` must be a non-negative integer"))))
            .transpose()
    };
    let algs: Vec<Algorithm> = take("algs")
        .ok_or_else(|| bad("missing algs=".into()))?
        .split(',')
        .map(|a| a.parse::<Algorithm>().map_err(|e| bad(e.to_string())))
        .collect::<Result<_, _>>()?;
    let d = num(take("d"), "d")?.ok_or_else(|| bad("missing d=".into()))? as usize;
    let n = num(take("n"), "n")?.map(|x| x as usize);
    let k = num(take("k"), "k")?.map(|x| x as usize);
    let m = num(take("m"), "m")?.map(|x| x as usize);
    let set_size = num(take("set_size"), "set_size")?.map(|x| x as usize);
    let seed = num(take("seed"), "seed")?.unwrap_or(0);
    let count = num(take("count"), "count")?.unwrap_or(1);
    let flag = |v: Option<String>, k: &str, default: bool| -> Result<bool, Failure> {
        match v.as_deref() {
            None => Ok(default),
            Some("yes" | "true" | "1") => Ok(true),
            Some("no" | "false" | "0") => Ok(false),
            Some(_) => Err(bad(format!("`{k}` must be yes or no"))),
        }
    };
    let directed = flag(take("directed"), "directed", false)?;
    let metric = flag(take("metric"), "metric", true)?;
    let oracle = flag(take("oracle"), "oracle", true)?;
    if let Some(k) = kv.keys().next() {
        return Err(bad(format!("unknown key `{k}`")));
    }
    let need = |v: Option<usize>, k: &str| v.ok_or_else(|| bad(format!("{family} needs {k}=")));
    let orientation = if directed { Orientation::Directed } else { Orientation::Undirected };

    let mut jobs = Vec::new();
    for s in seed..seed + count {
        let (id, inst) = match family.as_str() {
            "random" => {
                let n = need(n, "n")?;
                let inst = if metric {
                    gen_random_metric(n, s, orientation)
                } else {
                    gen_random_weights(n, s, orientation)
                };
                let kind = if directed { "random-dir" } else { "random" };
                (format!("{kind}/n={n}/seed={s}"), inst)
            }
            "tsp-reduction" => {
                let n = need(n, "n")?;
                let inst = gen_random_metric(n, s, Orientation::Undirected).and_then(|b| gen_tsp_reduction(&b, d));
                (format!("tsp-reduction/n={n}/d={d}/seed={s}"), inst.map(|x| x.0))
            }
            "groups" => {
                let k = need(k, "k")?;
                (format!("groups/k={k}/d={d}"), gen_groups(k, d).map(|x| x.0))
            }
            "star3" | "star9" => {
                let size = set_size.unwrap_or(d + 2);
                (format!("{family}/d={d}/set_size={size}"), gen_star(d, size).map(|x| x.0))
            }
            "chain" => {
                let m = need(m, "m")?;
                (format!("chain/d={d}/m={m}"), gen_chain(d, m).map(|x| x.0))
            }
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        jobs.push(Job {
            id,
            inst,
            d,
            algs: algs.clone(),
            oracle,
        });
    }
    Ok(jobs)
}

fn parse_suite(text: &str) -> Result<Vec<Job>, Failure> {
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        jobs.extend(parse_line(i + 1, line)?);
    }
    Ok(jobs)
}

/// `p/q` rounded half away from zero to six decimal places.
fn decimal(r: Rational64) -> String {
    let (p, q) = (i128::from(*r.numer()), i128::from(*r.denom()));
    let scaled = p * 1_000_000;
    let mut x = scaled / q;
    if (scaled % q).abs() * 2 >= q {
        x += scaled.signum();
    }
    let sign = if x < 0 { "-" } else { "" };
    let x = x.abs();
    format!("{sign}{}.{:06}", x / 1_000_000, x % 1_000_000)
}

fn oracle(inst: &Instance, d: usize, sense: Sense, budget: Duration) -> Option<Weight> {
    let limits = OracleLimits {
        time_budget: Some(budget),
        ..OracleLimits::default()
    };
    let sub = if inst.is_directed() {
        exact_directed(inst, d, sense, &limits)
    } else {
        exact_connected_dfactor(inst, d, ConnClass::Connected, &limits)
    };
    sub.ok().map(|s| s.weight())
}

fn run_job(job: &Job, no_timing: bool, budget: Duration) -> Vec<Vec<String>> {
    let dash = || "-".to_string();
    let inst = match &job.inst {
        Ok(i) => i,
        Err(e) => {
            return job
                .algs
                .iter()
                .map(|a| {
                    let mut row = vec![job.id.clone(), a.to_string(), dash(), job.d.to_string()];
                    row.extend((0..7).map(|_| dash()));
                    row.push(format!("error: {e}"));
                    row
                })
                .collect();
        }
    };
    let mut optima: BTreeMap<bool, Option<Weight>> = BTreeMap::new();
    let mut rows = Vec::new();
    for alg in &job.algs {
        let start = Instant::now();
        let res = solve(inst, job.d, *alg);
        let time = if no_timing {
            dash()
        } else {
            format!("{:.3}", start.elapsed().as_secs_f64() * 1e3)
        };
        let mut row = vec![job.id.clone(), alg.to_string(), inst.n().to_string(), job.d.to_string()];
        match res {
            Ok(rep) => {
                let max = rep.sense == Sense::Max;
                let opt = if job.oracle {
                    *optima
                        .entry(max)
                        .or_insert_with(|| oracle(inst, job.d, rep.sense, budget))
                } else {
                    None
                };
                let vs = match opt {
                    Some(0) if rep.weight() == 0 => "1.000000".to_string(),
                    Some(0) => "inf".to_string(),
                    Some(o) => decimal(Rational64::new(rep.weight(), o)),
                    None => dash(),
                };
                row.extend([
                    rep.weight().to_string(),
                    rep.lower_bound.to_string(),
                    format_ratio(rep.certified_ratio),
                    decimal(rep.certified_ratio),
                    opt.map_or_else(dash, |o| o.to_string()),
                    vs,
                    time,
                    "ok".to_string(),
                ]);
            }
            Err(e) => {
                row.extend((0..6).map(|_| dash()));
                row.push(time);
                row.push(format!("error: {e}"));
            }
        }
        rows.push(row);
    }
    rows
}

pub fn run(a: BenchArgs) -> Result<ExitCode, Failure> {
    let jobs = parse_suite(&read(&a.suite)?)?;
    if !(a.oracle_time.is_finite() && a.oracle_time >= 0.0) {
        return Err(usage("--oracle-time must be a non-negative number"));
    }
    let budget = Duration::from_secs_f64(a.oracle_time);
    let rows: Vec<Vec<Vec<String>>> = jobs.par_iter().map(|j| run_job(j, a.no_timing, budget)).collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure { code: 3, msg: e.to_string() };
    w.write_record(HEADER).map_err(io_err)?;
    for row in rows.iter().flatten() {
        w.write_record(row).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { code: 3, msg: e.to_string() })?;
    let text = String::from_utf8(bytes).map_err(|e| Failure { code: 3, msg: e.to_string() })?;
    match &a.output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_round_half_up() {
        assert_eq!(decimal(Rational64::new(3, 1)), "3.000000");
        assert_eq!(decimal(Rational64::new(2, 3)), "0.666667");
        assert_eq!(decimal(Rational64::new(1, 8_000_000)), "0.000000");
        assert_eq!(decimal(Rational64::new(1, 2_000_000)), "0.000001");
    }

    #[test]
    fn suite_lines_expand_by_count() {
        let jobs = parse_suite("# comment\n\nrandom n=6 d=2 seed=5 count=3 algs=approx3,auto\n").unwrap();
        assert_eq!(jobs.len(), 3);
        assert_eq!(jobs[2].id, "random/n=6/seed=7");
        assert_eq!(jobs[0].algs.len(), 2);
        assert!(parse_suite("random n=6 d=2 algs=nope").is_err());
        assert!(parse_suite("random n=6 d=2 bogus=1 algs=auto").is_err());
        assert!(parse_suite("random n=6 algs=auto").is_err());
    }
}
