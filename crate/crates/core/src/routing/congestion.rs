use rayon::prelude::*;
use serde::Serialize;

use super::{apsp, build_redistribution, solve_flow, FlowSweep, RoutingError, UniformDemand, UNREACHABLE};
use crate::graph::Graph;
use crate::scalar::FlowScalar;

/// Traffic carried by one undirected edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeFlow<S> {
    pub u: usize,
    pub v: usize,
    pub flow: S,
}

/// Bytes held by the routing stages, for comparison with `n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MemoryTelemetry {
    pub matrix_bytes: usize,
    pub redistribution_bytes: usize,
    pub flow_bytes: usize,
}

/// Vertex and edge congestion under all-pairs demand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CongestionReport<S> {
    pub n: usize,
    pub m: usize,
    pub diameter: usize,
    pub vertex_flow: Vec<S>,
    pub edge_flow: Vec<EdgeFlow<S>>,
    pub max_vertex_flow: S,
    pub argmax_vertex: usize,
    pub max_edge_flow: S,
    pub argmax_edge: (usize, usize),
    pub avg_vertex_flow: S,
    pub avg_edge_flow: S,
    pub apsp_iterations: usize,
    pub flow_iterations: usize,
    pub load_trace: Vec<f64>,
    pub memory: MemoryTelemetry,
}

/// [`congestion_with`] using the distance-ordered sweep.
pub fn congestion<S: FlowScalar>(g: &Graph) -> Result<CongestionReport<S>, RoutingError> {
    congestion_with(g, FlowSweep::default())
}

/// Routes half a unit in each direction between every pair of vertices and
/// reports the traffic through every vertex (endpoints included) and edge.
pub fn congestion_with<S: FlowScalar>(g: &Graph, sweep: FlowSweep) -> Result<CongestionReport<S>, RoutingError> {
    let n = g.n();
    let d = apsp(g)?;
    let r = build_redistribution(g, &d)?;
    let half = S::one() / (S::one() + S::one());
    let f = solve_flow(&r, &UniformDemand(half), sweep)?;

    const CHUNK: usize = 256;
    let vertex_flow: Vec<S> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .flat_map_iter(|vs| {
            let mut acc = vec![S::zero(); vs.len()];
            for w in 0..n {
                let col = f.column(w);
                for (a, &v) in acc.iter_mut().zip(vs) {
                    *a = a.clone() + col[v].clone();
                }
            }
            acc
        })
        .collect();

    let edges: Vec<(usize, usize)> = g.edges().collect();
    let edge_totals: Vec<S> = edges
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut acc = vec![S::zero(); chunk.len()];
            for w in 0..n {
                let to_w = d.row(w);
                let k = r.next_hop_column(w);
                let col = f.column(w);
                for (a, &(u, v)) in acc.iter_mut().zip(chunk) {
                    if to_w[u] == UNREACHABLE {
                        continue;
                    }
                    if to_w[v] + 1 == to_w[u] {
                        *a = a.clone() + col[u].clone() / S::from_u16(k[u]).expect("small integer");
                    } else if to_w[u] + 1 == to_w[v] {
                        *a = a.clone() + col[v].clone() / S::from_u16(k[v]).expect("small integer");
                    }
                }
            }
            acc
        })
        .collect();
    let edge_flow: Vec<EdgeFlow<S>> = edges
        .iter()
        .zip(edge_totals)
        .map(|(&(u, v), flow)| EdgeFlow { u, v, flow })
        .collect();

    let (argmax_vertex, max_vertex_flow) = argmax(vertex_flow.iter());
    let (argmax_e, max_edge_flow) = argmax(edge_flow.iter().map(|e| &e.flow));
    let argmax_edge = edges.get(argmax_e).copied().unwrap_or((0, 0));
    let avg_vertex_flow = mean(vertex_flow.iter());
    let avg_edge_flow = mean(edge_flow.iter().map(|e| &e.flow));

    Ok(CongestionReport {
        n,
        m: g.m(),
        diameter: d.diameter(),
        vertex_flow,
        edge_flow,
        max_vertex_flow,
        argmax_vertex,
        max_edge_flow,
        argmax_edge,
        avg_vertex_flow,
        avg_edge_flow,
        apsp_iterations: d.iterations(),
        flow_iterations: f.iterations(),
        load_trace: d.load_trace().to_vec(),
        memory: MemoryTelemetry {
            matrix_bytes: d.bytes(),
            redistribution_bytes: r.bytes(),
            flow_bytes: f.bytes(),
        },
    })
}

/// First index of the largest value.
fn argmax<'a, S: FlowScalar + 'a>(values: impl Iterator<Item = &'a S>) -> (usize, S) {
    let mut best = (0, S::zero());
    for (i, x) in values.enumerate() {
        if i == 0 || *x > best.1 {
            best = (i, x.clone());
        }
    }
    best
}

fn mean<'a, S: FlowScalar + 'a>(values: impl Iterator<Item = &'a S>) -> S {
    let mut count = 0usize;
    let sum = values.fold(S::zero(), |acc, x| {
        count += 1;
        acc + x.clone()
    });
    if count == 0 {
        S::zero()
    } else {
        sum / S::from_usize(count).expect("count representable")
    }
}
