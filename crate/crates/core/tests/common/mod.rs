//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use geoflow::ensembles::gen_er;
use geoflow::routing::{apsp, CongestionReport};
use geoflow::Graph;
use rand::Rng;
use robust::{incircle, orient2d, Coord};

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// O(N T) brute force: every triangle counter-clockwise with no point strictly
/// inside its circumcircle. Returns a description of the first violation.
pub fn circumcircle_violation(points: &[[f64; 2]], triangles: &[[usize; 3]]) -> Option<String> {
    for t in triangles {
        let [a, b, c] = t.map(|i| coord(points[i]));
        if orient2d(a, b, c) <= 0.0 {
            return Some(format!("triangle {t:?} is not counter-clockwise"));
        }
        for (i, p) in points.iter().enumerate() {
            if !t.contains(&i) && incircle(a, b, c, coord(*p)) > 0.0 {
                return Some(format!("point {i} inside circumcircle of {t:?}"));
            }
        }
    }
    None
}

/// Planar edge bound and Euler's formula on the triangulated disk.
pub fn structure_violation(n: usize, m: usize, triangles: usize) -> Option<String> {
    if n >= 3 && m > 3 * n - 6 {
        return Some(format!("{m} edges exceed 3n - 6 for n = {n}"));
    }
    if n as i64 - m as i64 + triangles as i64 + 1 != 2 {
        return Some(format!("Euler relation fails: n={n} m={m} T={triangles}"));
    }
    None
}

/// Largest relative error of the two global conservation sums:
/// total vertex flow against pairs times (distance + 1), total edge flow
/// against the sum of distances.
pub fn conservation_error(g: &Graph, rep: &CongestionReport<f64>) -> f64 {
    let d = apsp(g).expect("connected graph");
    let n = g.n();
    let mut dist_sum = 0.0;
    for s in 0..n {
        for t in s + 1..n {
            dist_sum += f64::from(d.get(s, t).expect("finite"));
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    let vertex_total: f64 = rep.vertex_flow.iter().sum();
    let edge_total: f64 = rep.edge_flow.iter().map(|e| e.flow).sum();
    let rel = |got: f64, want: f64| {
        if want == 0.0 {
            got.abs()
        } else {
            (got - want).abs() / want
        }
    };
    rel(vertex_total, dist_sum + pairs).max(rel(edge_total, dist_sum))
}

/// Erdős–Rényi graph with `n` in `[lo, hi]` and mean degree around 3-5,
/// redrawn until connected.
pub fn random_connected_er<R: Rng>(lo: usize, hi: usize, rng: &mut R) -> Graph {
    loop {
        let n = rng.random_range(lo..=hi);
        let p = rng.random_range(3.0..5.0) / n as f64;
        let g = gen_er(n, Some(p.min(1.0)), rng).expect("valid parameters");
        if g.is_connected() {
            return g;
        }
    }
}
