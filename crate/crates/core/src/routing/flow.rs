use rayon::prelude::*;

use super::{RedistributionTable, RoutingError, UNREACHABLE};
use crate::scalar::FlowScalar;

/// Entrywise change below which the flow iteration has reached its fixed
/// point.
pub const FIXED_POINT_TOLERANCE: f64 = 1e-12;

/// Demand matrix `S[w][v]`: traffic originating at `v` bound for `w`.
pub trait Demand<S>: Sync {
    fn demand(&self, destination: usize, vertex: usize) -> S;
}

/// Every ordered pair `v != w` sends the same amount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformDemand<S>(pub S);

impl<S: FlowScalar> Demand<S> for UniformDemand<S> {
    fn demand(&self, destination: usize, vertex: usize) -> S {
        if destination == vertex {
            S::zero()
        } else {
            self.0.clone()
        }
    }
}

/// Dense demand matrix, stored destination-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DemandMatrix<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: FlowScalar> DemandMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        DemandMatrix {
            n,
            values: vec![S::zero(); n * n],
        }
    }

    /// A single unit of traffic from `s` to `t`.
    pub fn single(n: usize, s: usize, t: usize) -> Self {
        let mut d = Self::zeros(n);
        d.set(t, s, S::one());
        d
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let values = (0..n * n).map(|i| f(i / n.max(1), i % n.max(1))).collect();
        DemandMatrix { n, values }
    }

    pub fn set(&mut self, destination: usize, vertex: usize, value: S) {
        self.values[destination * self.n + vertex] = value;
    }
}

impl<S: FlowScalar> Demand<S> for DemandMatrix<S> {
    fn demand(&self, destination: usize, vertex: usize) -> S {
        self.values[destination * self.n + vertex].clone()
    }
}

/// Order in which the per-destination update visits vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlowSweep {
    /// `F <- S + w(F)` with every entry updated from the previous iterate.
    Jacobi,
    /// In-place update in decreasing distance from the destination, so every
    /// inflow is final when read. Reaches the fixed point in one sweep; a
    /// second sweep confirms it.
    #[default]
    DistanceOrdered,
}

/// Accumulated flow `F[w][v]` at vertex `v` bound for `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState<S> {
    n: usize,
    flow: Vec<S>,
    iterations: usize,
}

impl<S: FlowScalar> FlowState<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, destination: usize, vertex: usize) -> &S {
        &self.flow[destination * self.n + vertex]
    }

    /// `F[w][.]`.
    pub fn column(&self, destination: usize) -> &[S] {
        &self.flow[destination * self.n..(destination + 1) * self.n]
    }

    /// Largest number of iterations any destination needed.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn bytes(&self) -> usize {
        self.flow.len() * std::mem::size_of::<S>()
    }
}

/// Inflow to `v` toward the destination whose distance row is `to_w`.
fn inflow<S: FlowScalar>(r: &RedistributionTable<'_>, to_w: &[u16], k: &[u16], col: &[S], v: usize) -> S {
    let farther = to_w[v] + 1;
    let mut acc = S::zero();
    for &i in r.graph().neighbors(v) {
        if to_w[i] == farther {
            acc = acc + col[i].clone() / S::from_u16(k[i]).expect("small integer representable");
        }
    }
    acc
}

/// Solves `F = S + w(F)` one destination column at a time.
///
/// Iteration stops once no entry moves by more than
/// [`FIXED_POINT_TOLERANCE`]; failing to do so within `diameter + 1`
/// iterations is reported as [`RoutingError::NonConvergence`].
pub fn solve_flow<S, D>(r: &RedistributionTable<'_>, demand: &D, sweep: FlowSweep) -> Result<FlowState<S>, RoutingError>
where
    S: FlowScalar,
    D: Demand<S> + ?Sized,
{
    let n = r.n();
    let dist = r.distances();
    let limit = dist.diameter() + 1;
    let tol = S::from_f64(FIXED_POINT_TOLERANCE).expect("tolerance representable");
    let mut flow = vec![S::zero(); n * n];
    let iterations = flow
        .par_chunks_mut(n.max(1))
        .enumerate()
        .map_init(Vec::new, |scratch, (w, col)| {
            for (v, x) in col.iter_mut().enumerate() {
                let s = demand.demand(w, v);
                if s < S::zero() || (v == w && !s.is_zero()) {
                    return Err(RoutingError::InvalidDemand {
                        destination: w,
                        vertex: v,
                    });
                }
                *x = s;
            }
            let to_w = dist.row(w);
            let k = r.next_hop_column(w);
            match sweep {
                FlowSweep::Jacobi => jacobi(r, demand, w, to_w, k, col, scratch, &tol, limit),
                FlowSweep::DistanceOrdered => ordered(r, demand, w, to_w, k, col, &tol, limit),
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;
    Ok(FlowState { n, flow, iterations })
}

#[allow(clippy::too_many_arguments)]
fn jacobi<S: FlowScalar, D: Demand<S> + ?Sized>(
    r: &RedistributionTable<'_>,
    demand: &D,
    w: usize,
    to_w: &[u16],
    k: &[u16],
    col: &mut [S],
    scratch: &mut Vec<S>,
    tol: &S,
    limit: usize,
) -> Result<usize, RoutingError> {
    scratch.clear();
    scratch.resize(col.len(), S::zero());
    for iteration in 1..=limit {
        let mut change = S::zero();
        for v in 0..col.len() {
            let next = if to_w[v] == UNREACHABLE {
                demand.demand(w, v)
            } else {
                demand.demand(w, v) + inflow(r, to_w, k, col, v)
            };
            let delta = next.abs_diff(&col[v]);
            if delta > change {
                change = delta;
            }
            scratch[v] = next;
        }
        col.clone_from_slice(scratch);
        if change <= *tol {
            return Ok(iteration);
        }
    }
    Err(RoutingError::NonConvergence {
        destination: w,
        iterations: limit,
    })
}

#[allow(clippy::too_many_arguments)]
fn ordered<S: FlowScalar, D: Demand<S> + ?Sized>(
    r: &RedistributionTable<'_>,
    demand: &D,
    w: usize,
    to_w: &[u16],
    k: &[u16],
    col: &mut [S],
    tol: &S,
    limit: usize,
) -> Result<usize, RoutingError> {
    // Counting sort of reachable vertices by decreasing distance to w.
    let top = limit;
    let mut start = vec![0usize; top + 2];
    for &d in to_w {
        if d != UNREACHABLE {
            start[top - usize::from(d) + 1] += 1;
        }
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut order = vec![0usize; start[top + 1]];
    for (v, &d) in to_w.iter().enumerate() {
        if d != UNREACHABLE {
            let slot = &mut start[top - usize::from(d)];
            order[*slot] = v;
            *slot += 1;
        }
    }
    for iteration in 1..=limit {
        let mut change = S::zero();
        for &v in &order {
            let next = demand.demand(w, v) + inflow(r, to_w, k, col, v);
            let delta = next.abs_diff(&col[v]);
            if delta > change {
                change = delta;
            }
            col[v] = next;
        }
        if change <= *tol {
            return Ok(iteration);
        }
    }
    Err(RoutingError::NonConvergence {
        destination: w,
        iterations: limit,
    })
}
