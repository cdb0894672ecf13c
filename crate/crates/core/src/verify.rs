//! Independent solution checks: the problem definitions in executable form.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::decomposition::bridges;
use crate::error::{Error, Result};
use crate::graph::{components_of, Edge, Instance, Subgraph, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyClass {
    Factor,
    Connected,
    TwoEdgeConnected,
    DirectedConnected,
}

impl VerifyClass {
    pub fn name(self) -> &'static str {
        match self {
            VerifyClass::Factor => "factor",
            VerifyClass::Connected => "connected",
            VerifyClass::TwoEdgeConnected => "two-edge-connected",
            VerifyClass::DirectedConnected => "directed-connected",
        }
    }
}

impl fmt::Display for VerifyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factor" => Ok(VerifyClass::Factor),
            "connected" => Ok(VerifyClass::Connected),
            "two-edge-connected" => Ok(VerifyClass::TwoEdgeConnected),
            "directed-connected" => Ok(VerifyClass::DirectedConnected),
            other => Err(Error::Precondition(format!("unknown class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }

    /// `Ok` when every check passed, otherwise an internal error naming the
    /// failed checks.
    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            return Ok(());
        }
        let msg: Vec<String> = self.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        Err(Error::Internal(msg.join("; ")))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Checks a raw edge list against the definitions. `claimed_weight`, when
/// given, must equal the recomputed weight.
pub fn verify_edges(
    inst: &Instance,
    edges: &[Edge],
    claimed_weight: Option<Weight>,
    d: usize,
    class: VerifyClass,
) -> VerifyReport {
    let n = inst.n();
    let directed = inst.is_directed();
    let mut rep = VerifyReport::default();

    let mut simple = true;
    let mut detail = String::new();
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            simple = false;
            detail = format!("edge ({u},{v}) out of range");
            break;
        }
        if u == v {
            simple = false;
            detail = format!("self-loop at {u}");
            break;
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            simple = false;
            detail = format!("duplicate edge ({u},{v})");
            break;
        }
    }
    rep.push("simple", simple, detail);
    if !simple {
        return rep;
    }

    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        out_deg[u] += 1;
        in_deg[v] += 1;
        adj[u].push(v);
        adj[v].push(u);
    }
    let uncovered = (0..n).filter(|&v| adj[v].is_empty()).count();
    rep.push(
        "spanning",
        uncovered == 0,
        if uncovered == 0 { String::new() } else { format!("{uncovered} isolated vertices") },
    );

    let bad = (0..n).find(|&v| {
        if directed {
            out_deg[v] != d || in_deg[v] != d
        } else {
            out_deg[v] + in_deg[v] != d
        }
    });
    rep.push(
        "degree",
        bad.is_none(),
        bad.map_or(String::new(), |v| format!("vertex {v} has degree {}", out_deg[v] + in_deg[v])),
    );

    match class {
        VerifyClass::Factor => {}
        VerifyClass::Connected | VerifyClass::TwoEdgeConnected | VerifyClass::DirectedConnected => {
            let orientation_ok = (class == VerifyClass::DirectedConnected) == directed;
            if !orientation_ok {
                rep.push("connectivity", false, format!("class {class} does not match a {} instance", inst.orientation()));
            } else {
                let comps = components_of(n, &adj).len();
                rep.push(
                    "connected",
                    comps == 1,
                    if comps == 1 { String::new() } else { format!("{comps} components") },
                );
                if class == VerifyClass::TwoEdgeConnected {
                    for list in &mut adj {
                        list.sort_unstable();
                    }
                    let b = bridges(&adj);
                    rep.push(
                        "two-edge-connected",
                        comps == 1 && b.is_empty(),
                        b.first().map_or(String::new(), |e| format!("bridge ({},{})", e.0, e.1)),
                    );
                }
            }
        }
    }

    let actual: Weight = edges.iter().map(|&(u, v)| inst.weight(u, v)).sum();
    if let Some(claimed) = claimed_weight {
        rep.push(
            "weight",
            claimed == actual,
            if claimed == actual {
                String::new()
            } else {
                format!("weight mismatch: claimed {claimed}, actual {actual}")
            },
        );
    }
    rep
}

pub fn verify_subgraph(inst: &Instance, sub: &Subgraph, d: usize, class: VerifyClass) -> VerifyReport {
    verify_edges(inst, &sub.edge_vec(), Some(sub.weight()), d, class)
}
