//! Plain-text formats: CFI instances, CFG sparse graphs, CFS solutions and
//! the `.meta` sidecar written next to generated instances.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Rational64;

use crate::connfactor::SolveReport;
use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, Orientation, SparseGraph, Weight};
use crate::instances::{GadgetMeta, KnownValue, Source};

/// Line reader that skips blank lines and reports 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last,
            msg: msg.into(),
        }
    }

    fn next_line(&mut self) -> Result<&'a str> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if !t.is_empty() {
                return Ok(t);
            }
        }
        self.last += 1;
        Err(self.err("unexpected end of input"))
    }

    /// A `key value` line; returns the value.
    fn field(&mut self, key: &str) -> Result<&'a str> {
        let line = self.next_line()?;
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok(v.trim()),
            _ => Err(self.err(format!("expected `{key} <value>`, found `{line}`"))),
        }
    }

    fn number<T: FromStr>(&self, s: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("invalid number `{s}`")))
    }

    fn header(&mut self, magic: &str) -> Result<()> {
        let v = self.field(magic)?;
        if v != "1" {
            return Err(self.err(format!("unsupported {magic} version `{v}`")));
        }
        Ok(())
    }

    fn pair(&mut self) -> Result<Edge> {
        let line = self.next_line()?;
        let mut it = line.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((self.number(a)?, self.number(b)?)),
            _ => Err(self.err(format!("expected `u v`, found `{line}`"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        for (i, line) in self.inner.by_ref() {
            if !line.trim().is_empty() {
                self.last = i + 1;
                return Err(self.err("trailing content"));
            }
        }
        Ok(())
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let n = inst.n();
    let mut s = format!(
        "CFI 1\nn {n}\nmode {}\nmetric {}\n",
        inst.orientation(),
        if inst.is_metric() { "yes" } else { "no" }
    );
    for u in 0..n {
        let row: Vec<String> = (0..n).map(|v| inst.weight(u, v).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a CFI file. A `metric yes` header is checked against the
/// weights; `metric no` marks the instance non-metric even if it happens
/// to satisfy the triangle inequality.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    lines.header("CFI")?;
    let n: usize = {
        let v = lines.field("n")?;
        lines.number(v)?
    };
    let orientation = match lines.field("mode")? {
        "undirected" => Orientation::Undirected,
        "directed" => Orientation::Directed,
        other => return Err(lines.err(format!("unknown mode `{other}`"))),
    };
    let declared = match lines.field("metric")? {
        "yes" => true,
        "no" => false,
        other => return Err(lines.err(format!("metric must be yes or no, found `{other}`"))),
    };
    let metric_line = lines.last;
    let mut w = Vec::with_capacity(n * n);
    for _ in 0..n {
        let line = lines.next_line()?;
        let row = line
            .split_whitespace()
            .map(|t| lines.number::<Weight>(t))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(lines.err(format!("expected {n} weights, found {}", row.len())));
        }
        w.extend(row);
    }
    lines.finish()?;
    let mut inst = Instance::new(orientation, n, w).map_err(|e| Error::Parse {
        line: metric_line + 1,
        msg: e.to_string(),
    })?;
    if declared && !inst.is_metric() {
        return Err(Error::Parse {
            line: metric_line,
            msg: "declared metric but the triangle inequality fails".into(),
        });
    }
    if !declared {
        inst.set_metric(false);
    }
    Ok(inst)
}

pub fn write_graph(g: &SparseGraph) -> String {
    let mut s = format!("CFG 1\nn {}\nm {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<SparseGraph> {
    let mut lines = Lines::new(text);
    lines.header("CFG")?;
    let v = lines.field("n")?;
    let n: usize = lines.number(v)?;
    let v = lines.field("m")?;
    let m: usize = lines.number(v)?;
    let mut g = SparseGraph::new(n);
    for _ in 0..m {
        let (u, v) = lines.pair()?;
        g.add_edge(u, v).map_err(|e| lines.err(e.to_string()))?;
    }
    lines.finish()?;
    Ok(g)
}

/// Contents of a CFS file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub weight: Weight,
    pub algorithm: String,
    pub claimed_ratio: Rational64,
    pub lower_bound: Weight,
    pub edges: Vec<Edge>,
}

impl From<&SolveReport> for SolutionFile {
    fn from(rep: &SolveReport) -> Self {
        SolutionFile {
            weight: rep.weight(),
            algorithm: rep.algorithm.clone(),
            claimed_ratio: rep.claimed_ratio,
            lower_bound: rep.lower_bound,
            edges: rep.solution.edge_vec(),
        }
    }
}

/// `p/q` even for integers.
pub fn format_ratio(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn write_solution(sol: &SolutionFile) -> String {
    let mut s = format!(
        "CFS 1\nweight {}\nalgorithm {}\nclaimed_ratio {}\nlower_bound {}\nedges {}\n",
        sol.weight,
        sol.algorithm,
        format_ratio(sol.claimed_ratio),
        sol.lower_bound,
        sol.edges.len()
    );
    for (u, v) in &sol.edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut lines = Lines::new(text);
    lines.header("CFS")?;
    let v = lines.field("weight")?;
    let weight = lines.number(v)?;
    let algorithm = lines.field("algorithm")?.to_string();
    let v = lines.field("claimed_ratio")?;
    let claimed_ratio = match v.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (lines.number(p)?, lines.number(q)?);
            if q == 0 {
                return Err(lines.err("zero denominator"));
            }
            Rational64::new(p, q)
        }
        None => Rational64::from_integer(lines.number(v)?),
    };
    let v = lines.field("lower_bound")?;
    let lower_bound = lines.number(v)?;
    let v = lines.field("edges")?;
    let m: usize = lines.number(v)?;
    let edges = (0..m).map(|_| lines.pair()).collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    Ok(SolutionFile {
        weight,
        algorithm,
        claimed_ratio,
        lower_bound,
        edges,
    })
}

/// One `key value provenance` line per entry: the family, each parameter,
/// then the known values.
pub fn write_meta(meta: &GadgetMeta) -> String {
    let mut s = format!("family {} input\n", meta.family);
    for (k, v) in &meta.params {
        let _ = writeln!(s, "{k} {v} input");
    }
    for kv in &meta.known_values {
        let _ = writeln!(s, "{} {} {}", kv.quantity, kv.value, kv.source);
    }
    s
}

pub fn parse_meta(text: &str) -> Result<GadgetMeta> {
    let mut meta = GadgetMeta::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [key, value, prov] = parts[..] else {
            return Err(err(format!("expected `key value provenance`, found `{line}`")));
        };
        match (key, prov) {
            ("family", "input") => meta.family = value.to_string(),
            (_, "input") => {
                let v = value.parse().map_err(|_| err(format!("invalid number `{value}`")))?;
                meta.params.insert(key.to_string(), v);
            }
            (_, "proof" | "computed") => {
                let v = value.parse().map_err(|_| err(format!("invalid number `{value}`")))?;
                meta.known_values.push(KnownValue {
                    quantity: key.to_string(),
                    value: v,
                    source: if prov == "proof" { Source::Proof } else { Source::Computed },
                });
            }
            _ => return Err(err(format!("unknown provenance `{prov}`"))),
        }
    }
    Ok(meta)
}
