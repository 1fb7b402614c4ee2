//! Random and deterministic graph families, and random matching augmentation.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("connection radius {0} must be nonnegative")]
    InvalidRadius(f64),
    #[error("degree {0} must be even for the permutation construction")]
    OddDegree(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
}

/// Default edge probability `2 ln n / n`.
pub fn default_er_probability(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * n.ln() / n).min(1.0)
}

/// Default connection radius `sqrt(2 ln n / n)`.
pub fn default_rgg_radius(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * n.ln() / n).sqrt()
}

/// Erdős–Rényi graph: every unordered pair is an edge independently with
/// probability `p` (default [`default_er_probability`]).
pub fn gen_er<R: Rng + ?Sized>(n: usize, p: Option<f64>, rng: &mut R) -> Result<Graph, EnsembleError> {
    if n < 2 {
        return Err(EnsembleError::InvalidParameter(format!(
            "Erdős–Rényi needs n >= 2, got {n}"
        )));
    }
    let p = p.unwrap_or_else(|| default_er_probability(n));
    if !(0.0..=1.0).contains(&p) {
        return Err(EnsembleError::InvalidProbability(p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("pairs are in range"))
}

/// Random geometric graph: `n` uniform points in the unit square joined when
/// their distance is at most `radius` (default [`default_rgg_radius`]).
pub fn gen_rgg<R: Rng + ?Sized>(n: usize, radius: Option<f64>, rng: &mut R) -> Result<Graph, EnsembleError> {
    if n < 2 {
        return Err(EnsembleError::InvalidParameter(format!(
            "geometric graph needs n >= 2, got {n}"
        )));
    }
    let radius = radius.unwrap_or_else(|| default_rgg_radius(n));
    let points: Vec<[f64; 2]> = (0..n).map(|_| [rng.random(), rng.random()]).collect();
    rgg_from_points(points, radius)
}

/// Geometric graph on given points: edge iff Euclidean distance `<= radius`.
pub fn rgg_from_points(points: Vec<[f64; 2]>, radius: f64) -> Result<Graph, EnsembleError> {
    if radius.is_nan() || radius < 0.0 {
        return Err(EnsembleError::InvalidRadius(radius));
    }
    let n = points.len();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &u) in by_x.iter().enumerate() {
        for &v in &by_x[i + 1..] {
            let dx = points[v][0] - points[u][0];
            if dx > radius {
                break;
            }
            let dy = points[v][1] - points[u][1];
            if dx * dx + dy * dy <= r2 {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges).expect("pairs are in range");
    Ok(g.with_coords(points).expect("one coordinate per vertex"))
}

/// Union of `k / 2` uniform random permutations, joining `v` to `pi(v)`;
/// self-loops are dropped and parallel edges merged, so degrees are at most `k`.
pub fn gen_random_regular<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Graph, EnsembleError> {
    if k % 2 == 1 {
        return Err(EnsembleError::OddDegree(k));
    }
    if k < 2 || n <= k {
        return Err(EnsembleError::InvalidParameter(format!(
            "random regular graph needs even k >= 2 and n > k, got n = {n}, k = {k}"
        )));
    }
    let mut edges = Vec::with_capacity(n * k / 2);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..k / 2 {
        perm.shuffle(rng);
        edges.extend(perm.iter().enumerate().map(|(v, &w)| (v, w)));
    }
    Ok(Graph::from_edges_dropping_loops(n, edges).expect("pairs are in range"))
}

/// Vertex count of the complete Bethe lattice with coordination `k` and
/// `depth` shells: `1 + k ((k-1)^depth - 1) / (k - 2)`.
pub fn bethe_size(k: usize, depth: usize) -> usize {
    let mut total = 1;
    let mut shell = k;
    for _ in 0..depth {
        total += shell;
        shell *= k - 1;
    }
    total
}

/// Complete rooted `k`-regular tree: the root (vertex 0) has `k` children,
/// every other internal vertex `k - 1`, and all leaves sit at `depth`.
/// Vertices are numbered in breadth-first order.
pub fn gen_bethe(k: usize, depth: usize) -> Result<Graph, EnsembleError> {
    if k < 3 {
        return Err(EnsembleError::InvalidParameter(format!(
            "Bethe lattice needs k >= 3, got {k}"
        )));
    }
    let n = bethe_size(k, depth);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut frontier = vec![0usize];
    let mut next_id = 1;
    for level in 0..depth {
        let children = if level == 0 { k } else { k - 1 };
        let mut next_frontier = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_id));
                next_frontier.push(next_id);
                next_id += 1;
            }
        }
        frontier = next_frontier;
    }
    Ok(Graph::from_edges(n, edges).expect("tree edges are valid"))
}

/// The complete graph `K_n`.
pub fn gen_complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("pairs are in range")
}

/// Edges a random maximal matching would add to `g`.
///
/// Starting from a pool of all vertices, a uniform random pair is drawn and
/// removed from the pool; the pair becomes an edge unless it already is one.
/// Drawing stops once at most one vertex remains.
pub fn random_matching_edges<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Vec<(usize, usize)> {
    let mut pool: Vec<usize> = (0..g.n()).collect();
    let mut added = Vec::new();
    while pool.len() >= 2 {
        let u = pool.swap_remove(rng.random_range(0..pool.len()));
        let v = pool.swap_remove(rng.random_range(0..pool.len()));
        if !g.has_edge(u, v) {
            added.push((u.min(v), u.max(v)));
        }
    }
    added
}

/// `g` plus one random maximal matching (see [`random_matching_edges`]).
pub fn add_random_matching<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let extra = random_matching_edges(g, rng);
    g.with_edges_added(extra).expect("matching edges are valid")
}
