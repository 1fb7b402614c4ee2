use rayon::prelude::*;

use super::RoutingError;
use crate::graph::Graph;

/// Sentinel for an infinite (unreachable) distance.
pub const UNREACHABLE: u16 = u16::MAX;

/// Load factor above which [`min_plus_step`] scans rows densely instead of
/// walking the sparsity bitmap.
pub const DENSE_THRESHOLD: f64 = 0.5;

/// Hop-count distances as a dense `u16` matrix with a bitmap of finite
/// entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
    /// Per-row stride of `finite`, in 64-bit words.
    words: usize,
    finite: Vec<u64>,
    finite_count: usize,
    diameter: u16,
    load_trace: Vec<f64>,
    iterations: usize,
}

/// Result of one min-plus multiplication.
#[derive(Debug, Clone)]
pub struct MinPlusStep {
    pub matrix: DistanceMatrix,
    pub changed: bool,
    pub load_factor: f64,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn for_each_bit(words: &[u64], mut f: impl FnMut(usize)) {
    for (k, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            f(64 * k + bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
    }
}

impl DistanceMatrix {
    /// Zero on the diagonal, unreachable elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |u, v| (u == v).then_some(0))
    }

    /// Zero on the diagonal, one on edges, unreachable elsewhere.
    pub fn adjacency_seed(g: &Graph) -> Self {
        let n = g.n();
        let mut d = Self::identity(n);
        for (u, v) in g.edges() {
            d.set(u, v, 1);
            d.set(v, u, 1);
        }
        d.refresh_summary();
        d
    }

    /// Builds a matrix from a distance function (`None` = unreachable).
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Option<u16>) -> Self {
        let words = words_for(n);
        let mut d = DistanceMatrix {
            n,
            dist: vec![UNREACHABLE; n * n],
            words,
            finite: vec![0; n * words],
            finite_count: 0,
            diameter: 0,
            load_trace: Vec::new(),
            iterations: 0,
        };
        for u in 0..n {
            for v in 0..n {
                if let Some(x) = f(u, v) {
                    d.set(u, v, x);
                }
            }
        }
        d.refresh_summary();
        d
    }

    fn set(&mut self, u: usize, v: usize, x: u16) {
        debug_assert_ne!(x, UNREACHABLE);
        self.dist[u * self.n + v] = x;
        self.finite[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn refresh_summary(&mut self) {
        self.finite_count = self.finite.iter().map(|w| w.count_ones() as usize).sum();
        self.diameter = self
            .dist
            .iter()
            .copied()
            .filter(|&x| x != UNREACHABLE)
            .max()
            .unwrap_or(0);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance from `u` to `v`, `None` when unreachable.
    pub fn get(&self, u: usize, v: usize) -> Option<u16> {
        let x = self.dist[u * self.n + v];
        (x != UNREACHABLE).then_some(x)
    }

    /// Raw row `u`; unreachable entries hold [`UNREACHABLE`].
    pub fn row(&self, u: usize) -> &[u16] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_finite(&self, u: usize, v: usize) -> bool {
        self.finite[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn bits_row(&self, u: usize) -> &[u64] {
        &self.finite[u * self.words..(u + 1) * self.words]
    }

    /// Largest finite entry.
    pub fn diameter(&self) -> usize {
        usize::from(self.diameter)
    }

    pub fn finite_count(&self) -> usize {
        self.finite_count
    }

    /// Fraction of finite entries.
    pub fn load_factor(&self) -> f64 {
        if self.n == 0 {
            return 1.0;
        }
        self.finite_count as f64 / (self.n * self.n) as f64
    }

    /// Load factor of the seed and of the result of every productive
    /// multiplication, as recorded by [`apsp`].
    pub fn load_trace(&self) -> &[f64] {
        &self.load_trace
    }

    /// Min-plus multiplications performed by [`apsp`], including the final
    /// one that confirmed the fixed point.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Storage footprint: distances plus sparsity bits.
    pub fn bytes(&self) -> usize {
        self.dist.len() * std::mem::size_of::<u16>() + self.finite.len() * std::mem::size_of::<u64>()
    }
}

/// One min-plus multiplication by the adjacency structure:
/// `D'[u][w] = min(D[u][w], min over v in adj(w) of D[u][v] + 1)`.
///
/// Rows are scanned through the sparsity bitmap while the load factor is below
/// [`DENSE_THRESHOLD`] and densely above it.
pub fn min_plus_step(d: &DistanceMatrix, g: &Graph) -> Result<MinPlusStep, RoutingError> {
    let n = d.n;
    if g.n() != n {
        return Err(RoutingError::DimensionMismatch {
            matrix: n,
            graph: g.n(),
        });
    }
    let dense = d.load_factor() >= DENSE_THRESHOLD;
    let mut out = d.clone();
    let words = d.words;
    let changed = out
        .dist
        .par_chunks_mut(n.max(1))
        .zip(out.finite.par_chunks_mut(words.max(1)))
        .enumerate()
        .map(|(u, (row, bits))| {
            let old = d.row(u);
            let mut changed = false;
            if dense {
                for w in 0..n {
                    let mut best = old[w];
                    for &v in g.neighbors(w) {
                        let c = old[v];
                        if c != UNREACHABLE && c + 1 < best {
                            best = c + 1;
                        }
                    }
                    if best < row[w] {
                        row[w] = best;
                        changed = true;
                    }
                }
            } else {
                for_each_bit(d.bits_row(u), |v| {
                    let c = old[v] + 1;
                    for &w in g.neighbors(v) {
                        if c < row[w] {
                            row[w] = c;
                            changed = true;
                        }
                    }
                });
            }
            if changed {
                for (w, &x) in row.iter().enumerate() {
                    if x != UNREACHABLE {
                        bits[w / 64] |= 1 << (w % 64);
                    }
                }
            }
            changed
        })
        .reduce(|| false, |a, b| a | b);
    out.refresh_summary();
    let load_factor = out.load_factor();
    Ok(MinPlusStep {
        matrix: out,
        changed,
        load_factor,
    })
}

/// All-pairs hop distances by repeated min-plus multiplication from the
/// adjacency seed, stopping when a multiplication changes nothing.
///
/// Each multiplication only relaxes from entries that changed in the previous
/// one (tracked in a second bitmap); entries that did not change already
/// contributed everything they can. The sequence of matrices is the same as
/// iterating [`min_plus_step`].
pub fn apsp(g: &Graph) -> Result<DistanceMatrix, RoutingError> {
    let n = g.n();
    if n >= usize::from(UNREACHABLE) {
        return Err(RoutingError::TooLarge(n));
    }
    let (_, components) = g.components();
    if components > 1 {
        return Err(RoutingError::DisconnectedGraph { components });
    }
    let mut d = DistanceMatrix::adjacency_seed(g);
    d.load_trace.push(d.load_factor());
    let words = d.words;
    // Entries that changed in the last multiplication: the edges of the seed.
    let mut fresh = vec![0u64; n * words];
    for (u, v) in g.edges() {
        fresh[u * words + v / 64] |= 1 << (v % 64);
        fresh[v * words + u / 64] |= 1 << (u % 64);
    }
    let mut next = vec![0u64; n * words];
    loop {
        d.iterations += 1;
        let added: usize = d
            .dist
            .par_chunks_mut(n.max(1))
            .zip(d.finite.par_chunks_mut(words.max(1)))
            .zip(fresh.par_chunks(words.max(1)).zip(next.par_chunks_mut(words.max(1))))
            .map(|((row, bits), (fresh_row, next_row))| {
                next_row.fill(0);
                let mut added = 0;
                for_each_bit(fresh_row, |v| {
                    let c = row[v] + 1;
                    for &w in g.neighbors(v) {
                        // Only unreachable entries can improve: every fresh
                        // entry holds the current maximum hop count.
                        if row[w] == UNREACHABLE {
                            row[w] = c;
                            bits[w / 64] |= 1 << (w % 64);
                            next_row[w / 64] |= 1 << (w % 64);
                            added += 1;
                        }
                    }
                });
                added
            })
            .sum();
        if added == 0 {
            break;
        }
        d.finite_count += added;
        d.diameter += 1;
        d.load_trace.push(d.load_factor());
        std::mem::swap(&mut fresh, &mut next);
    }
    Ok(d)
}
