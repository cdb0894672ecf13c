//! Euler circuits of edge multisets and shortcutting them into tours.
//!
//! Doubled trees and `R + M` unions are multigraphs; they are passed here
//! as plain edge lists in which a pair may repeat.

use crate::error::{Error, Result};
use crate::graph::{components_of, Edge, Instance, Tour};

/// Closed walk using every edge of `edges` exactly once, starting at the
/// smallest vertex that has an edge and always leaving along the
/// smallest-index unused neighbor. The returned sequence repeats the start
/// vertex at the end.
pub fn euler_circuit(n: usize, directed: bool, edges: &[Edge]) -> Result<Vec<usize>> {
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    // (neighbor, edge id)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        if u >= n || v >= n || u == v {
            return Err(Error::NotEulerian);
        }
        out_deg[u] += 1;
        in_deg[v] += 1;
        adj[u].push((v, id));
        if !directed {
            adj[v].push((u, id));
        }
    }
    for v in 0..n {
        let balanced = if directed {
            out_deg[v] == in_deg[v]
        } else {
            (out_deg[v] + in_deg[v]).is_multiple_of(2)
        };
        if !balanced {
            return Err(Error::NotEulerian);
        }
    }
    let Some(start) = (0..n).find(|&v| out_deg[v] + in_deg[v] > 0) else {
        return Ok(Vec::new());
    };
    let mut und = vec![Vec::new(); n];
    for &(u, v) in edges {
        und[u].push(v);
        und[v].push(u);
    }
    let nontrivial = components_of(n, &und)
        .into_iter()
        .filter(|c| c.len() > 1)
        .count();
    if nontrivial != 1 {
        return Err(Error::NotEulerian);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut used = vec![false; edges.len()];
    let mut ptr = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].1] {
            ptr[v] += 1;
        }
        if ptr[v] == adj[v].len() {
            circuit.push(v);
            stack.pop();
        } else {
            let (w, id) = adj[v][ptr[v]];
            used[id] = true;
            stack.push(w);
        }
    }
    circuit.reverse();
    Ok(circuit)
}

/// Euler tour of the multigraph `edges` shortcut to first occurrences.
/// Every vertex of `inst` must be covered.
pub fn euler_shortcut(inst: &Instance, edges: &[Edge]) -> Result<Tour> {
    let n = inst.n();
    let circuit = euler_circuit(n, inst.is_directed(), edges)?;
    let order = first_occurrences(n, &circuit);
    if order.len() != n {
        return Err(Error::NotEulerian);
    }
    Tour::new(inst, order)
}

/// Like [`euler_shortcut`], but the closed order only visits `targets`.
pub fn euler_shortcut_through(inst: &Instance, edges: &[Edge], targets: &[usize]) -> Result<Vec<usize>> {
    let n = inst.n();
    let circuit = euler_circuit(n, inst.is_directed(), edges)?;
    let mut want = vec![false; n];
    for &t in targets {
        want[t] = true;
    }
    let order: Vec<usize> = first_occurrences(n, &circuit)
        .into_iter()
        .filter(|&v| want[v])
        .collect();
    let distinct = want.iter().filter(|&&b| b).count();
    if order.len() != distinct {
        return Err(Error::NotEulerian);
    }
    Ok(order)
}

fn first_occurrences(n: usize, walk: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &v in walk {
        if !seen[v] {
            seen[v] = true;
            order.push(v);
        }
    }
    order
}
