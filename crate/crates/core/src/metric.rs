//! Triangle-inequality checks and shortest-path completion.

use crate::error::{Error, Result};
use crate::graph::{Instance, Orientation, Weight, WeightedGraph};

const UNREACHABLE: Weight = Weight::MAX / 4;

/// True iff every ordered triple satisfies `w(x,z) <= w(x,y) + w(y,z)`.
/// Symmetry of undirected instances is enforced at construction.
pub fn check_metric(inst: &Instance) -> bool {
    let n = inst.n();
    for y in 0..n {
        for x in 0..n {
            let xy = inst.weight(x, y);
            for z in 0..n {
                if inst.weight(x, z) > xy + inst.weight(y, z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-checks the triangle inequality and refreshes the instance's flag.
pub fn validate_metric(inst: &mut Instance) -> bool {
    let ok = check_metric(inst);
    inst.set_metric(ok);
    ok
}

/// Complete instance of shortest-path distances in `g`.
pub fn metric_completion(g: &WeightedGraph) -> Result<Instance> {
    let n = g.n;
    let mut dist = vec![UNREACHABLE; n * n];
    for v in 0..n {
        dist[v * n + v] = 0;
    }
    for &(u, v, w) in &g.edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInstance(format!("edge ({u},{v}) out of range")));
        }
        if w < 0 {
            return Err(Error::InvalidInstance(format!("negative weight on ({u},{v})")));
        }
        if u != v {
            dist[u * n + v] = dist[u * n + v].min(w);
            dist[v * n + u] = dist[v * n + u].min(w);
        }
    }
    complete_matrix(Orientation::Undirected, n, dist)
}

/// Shortest-path closure of a (possibly asymmetric) weight matrix.
/// Directed closure keeps `w(x,z) <= w(x,y) + w(y,z)` order-sensitively.
pub fn complete_matrix(orientation: Orientation, n: usize, mut dist: Vec<Weight>) -> Result<Instance> {
    for k in 0..n {
        for i in 0..n {
            let ik = dist[i * n + k];
            if ik >= UNREACHABLE {
                continue;
            }
            for j in 0..n {
                let via = ik + dist[k * n + j];
                if via < dist[i * n + j] {
                    dist[i * n + j] = via;
                }
            }
        }
    }
    if dist.iter().any(|&x| x >= UNREACHABLE) {
        return Err(Error::NotConnected);
    }
    let inst = Instance::new(orientation, n, dist)?;
    debug_assert!(inst.is_metric());
    Ok(inst)
}
