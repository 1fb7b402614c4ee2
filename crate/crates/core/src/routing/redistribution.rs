use rayon::prelude::*;

use super::{rle, DistanceMatrix, RoutingError, UNREACHABLE};
use crate::graph::Graph;
use crate::scalar::FlowScalar;

/// Equal-split redistribution vectors.
///
/// For a directed edge `i -> j` and destination `w`, `r_ij[w] = 1/k` when `j`
/// is one of the `k` neighbors of `i` one hop closer to `w`, and zero
/// otherwise. The table stores `k` per (destination, vertex) pair; whether a
/// particular edge carries the fraction is read off the distance matrix it
/// borrows.
#[derive(Debug, Clone)]
pub struct RedistributionTable<'a> {
    graph: &'a Graph,
    dist: &'a DistanceMatrix,
    /// `next_hops[w * n + i]`, zero when `i == w` or `w` is unreachable.
    next_hops: Vec<u16>,
}

/// Builds the redistribution table for `g` from its distance matrix.
pub fn build_redistribution<'a>(g: &'a Graph, d: &'a DistanceMatrix) -> Result<RedistributionTable<'a>, RoutingError> {
    let n = g.n();
    if d.n() != n {
        return Err(RoutingError::DimensionMismatch {
            matrix: d.n(),
            graph: n,
        });
    }
    let mut next_hops = vec![0u16; n * n];
    next_hops.par_chunks_mut(n.max(1)).enumerate().for_each(|(w, out)| {
        let to_w = d.row(w);
        for (i, k) in out.iter_mut().enumerate() {
            let di = to_w[i];
            if i == w || di == UNREACHABLE {
                continue;
            }
            *k = g.neighbors(i).iter().filter(|&&j| to_w[j] + 1 == di).count() as u16;
        }
    });
    Ok(RedistributionTable {
        graph: g,
        dist: d,
        next_hops,
    })
}

impl<'a> RedistributionTable<'a> {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn distances(&self) -> &'a DistanceMatrix {
        self.dist
    }

    /// Number of next hops from `i` toward `w` (zero when `i == w`).
    pub fn next_hop_count(&self, i: usize, w: usize) -> u16 {
        self.next_hops[w * self.n() + i]
    }

    /// Next-hop counts of every vertex toward `w`.
    pub fn next_hop_column(&self, w: usize) -> &[u16] {
        let n = self.n();
        &self.next_hops[w * n..(w + 1) * n]
    }

    /// Whether `j` is one hop closer to `w` than `i`.
    pub fn is_next_hop(&self, i: usize, j: usize, w: usize) -> bool {
        let to_w = self.dist.row(w);
        to_w[i] != UNREACHABLE && to_w[j] + 1 == to_w[i] && self.graph.has_edge(i, j)
    }

    /// `r_ij[w]`.
    pub fn fraction<S: FlowScalar>(&self, i: usize, j: usize, w: usize) -> S {
        if self.is_next_hop(i, j, w) {
            S::reciprocal(self.next_hop_count(i, w))
        } else {
            S::zero()
        }
    }

    /// Non-zero entries of `r_ij` as `(w, k)` with `r_ij[w] = 1/k`, in
    /// increasing `w`.
    pub fn edge_vector(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, u16)> + '_ {
        let row_i = self.dist.row(i);
        let row_j = self.dist.row(j);
        (0..self.n())
            .filter(move |&w| row_i[w] != UNREACHABLE && row_j[w] + 1 == row_i[w])
            .map(move |w| (w, self.next_hop_count(i, w)))
    }

    /// Run-length encoding of `r_ij`.
    pub fn encode_edge(&self, i: usize, j: usize) -> Vec<u8> {
        rle::encode(self.edge_vector(i, j))
    }

    /// Total bytes of the run-length encoding over all directed edges.
    pub fn encoded_bytes(&self) -> usize {
        (0..self.n())
            .into_par_iter()
            .map(|i| {
                self.graph
                    .neighbors(i)
                    .iter()
                    .map(|&j| self.encode_edge(i, j).len())
                    .sum::<usize>()
            })
            .sum()
    }

    /// Bytes of the in-memory next-hop table.
    pub fn bytes(&self) -> usize {
        self.next_hops.len() * std::mem::size_of::<u16>()
    }

    /// `histogram[k]` counts the pairs (vertex, destination) with `k` next
    /// hops; index 0 is unused.
    pub fn k_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; 2];
        for &k in &self.next_hops {
            if k > 0 {
                let k = usize::from(k);
                if k >= hist.len() {
                    hist.resize(k + 1, 0);
                }
                hist[k] += 1;
            }
        }
        hist
    }

    /// Mean number of next hops per (vertex, destination) pair, which is also
    /// the mean number of non-zeros per (vertex, destination) over out-edges.
    pub fn mean_k(&self) -> f64 {
        let hist = self.k_histogram();
        let pairs: u64 = hist.iter().sum();
        if pairs == 0 {
            return 0.0;
        }
        let total: u64 = hist.iter().enumerate().map(|(k, &c)| k as u64 * c).sum();
        total as f64 / pairs as f64
    }

    /// Fraction of non-zero entries over all redistribution vectors: the
    /// number of non-zeros divided by (directed edges x vertices).
    pub fn vector_load_factor(&self) -> f64 {
        let n = self.n();
        let slots = 2 * self.graph.m() * n;
        if slots == 0 {
            return 0.0;
        }
        let nonzeros: u64 = self.next_hops.iter().map(|&k| u64::from(k)).sum();
        nonzeros as f64 / slots as f64
    }
}
