use std::collections::BTreeMap;

use super::RoutingError;
use crate::graph::Graph;

/// Equal-split flow of one unit from a single source, computed by explicit
/// recursion over next hops.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleFlow {
    /// Flow present at each vertex, source and destination included.
    pub vertex: Vec<f64>,
    /// Flow along each directed edge `(from, to)` that carries any.
    pub edges: BTreeMap<(usize, usize), f64>,
}

/// Reference implementation for tests. Exponential in the number of geodesics,
/// so only suitable for small graphs.
pub fn oracle_flow(g: &Graph, s: usize, t: usize) -> Result<OracleFlow, RoutingError> {
    if s == t {
        return Err(RoutingError::SameEndpoints(s));
    }
    let dist = g.bfs(t);
    if dist[s].is_none() {
        return Err(RoutingError::Unreachable { s, t });
    }
    let mut out = OracleFlow {
        vertex: vec![0.0; g.n()],
        edges: BTreeMap::new(),
    };
    push(g, &dist, s, 1.0, &mut out);
    Ok(out)
}

fn push(g: &Graph, dist: &[Option<usize>], v: usize, amount: f64, out: &mut OracleFlow) {
    out.vertex[v] += amount;
    let Some(dv) = dist[v] else { return };
    if dv == 0 {
        return;
    }
    let hops: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&j| dist[j] == Some(dv - 1))
        .collect();
    let share = amount / hops.len() as f64;
    for j in hops {
        *out.edges.entry((v, j)).or_insert(0.0) += share;
        push(g, dist, j, share, out);
    }
}
