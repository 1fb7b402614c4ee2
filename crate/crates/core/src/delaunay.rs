//! Planar Delaunay triangulation.
//!
//! Incremental Bowyer-Watson insertion in Hilbert-curve order with ghost
//! triangles closing the convex hull. Orientation and in-circle tests use
//! adaptive exact predicates. Co-circular ties are resolved as if each point
//! were lifted off the paraboloid by an amount that shrinks with its index,
//! so a co-circular quadrilateral is always split by the diagonal through its
//! lowest-index vertex and the output does not depend on insertion order.

use robust::{incircle, orient2d, Coord};
use thiserror::Error;

use crate::graph::Graph;
use crate::pointgen::PointSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DelaunayError {
    #[error("need at least 2 points, got {0}")]
    DegenerateInput(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("point {0} lies beyond the coordinate range {MAX_COORDINATE:e} where in-circle tests stay finite")]
    OutOfRange(usize),
}

/// Largest coordinate magnitude accepted: the in-circle determinant has
/// fourth-degree terms, which must not overflow.
pub const MAX_COORDINATE: f64 = 1e75;

/// A Delaunay triangulation and its edge graph.
#[derive(Debug, Clone)]
pub struct Triangulation {
    /// Vertices are the input points (coordinates attached), edges the
    /// Delaunay edges.
    pub graph: Graph,
    /// Counter-clockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// Set when the input was collinear (or had two points) and the graph is
    /// the path through the points in order along their line.
    pub degenerate: bool,
}

pub fn triangulate(points: &PointSet) -> Result<Triangulation, DelaunayError> {
    triangulate_points(&points.points)
}

pub fn triangulate_points(points: &[[f64; 2]]) -> Result<Triangulation, DelaunayError> {
    let n = points.len();
    if let Some(i) = points.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(DelaunayError::NonFinite(i));
    }
    if let Some(i) = points
        .iter()
        .position(|p| p[0].abs() > MAX_COORDINATE || p[1].abs() > MAX_COORDINATE)
    {
        return Err(DelaunayError::OutOfRange(i));
    }
    if n < 2 {
        return Err(DelaunayError::DegenerateInput(n));
    }
    let mut lex: Vec<usize> = (0..n).collect();
    lex.sort_by(|&a, &b| points[a].partial_cmp(&points[b]).unwrap().then(a.cmp(&b)));
    if let Some(w) = lex.windows(2).find(|w| points[w[0]] == points[w[1]]) {
        return Err(DelaunayError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
    }

    let order = hilbert_order(points);
    let Some(seed) = initial_triangle(points, &order) else {
        // All collinear: lexicographic order is the order along the line.
        let graph = Graph::from_edges(n, lex.windows(2).map(|w| (w[0], w[1])))
            .and_then(|g| g.with_coords(points.to_vec()))
            .expect("path edges are valid");
        return Ok(Triangulation {
            graph,
            triangles: Vec::new(),
            degenerate: true,
        });
    };

    let mut mesh = Mesh::new(points, seed);
    for &p in &order {
        if !seed.contains(&p) {
            mesh.insert(p);
        }
    }
    Ok(mesh.finish())
}

const GHOST: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Tri {
    /// Counter-clockwise; at most one entry is `GHOST`.
    v: [usize; 3],
    /// `nb[i]` lies across the edge `v[i+1] -> v[i+2]`.
    nb: [usize; 3],
}

struct Boundary {
    from: usize,
    to: usize,
    outer: usize,
}

struct Mesh<'a> {
    pts: &'a [[f64; 2]],
    tris: Vec<Tri>,
    alive: Vec<bool>,
    free: Vec<usize>,
    /// `2 * stamp` = tested, not in conflict; `2 * stamp + 1` = in conflict.
    mark: Vec<u64>,
    stamp: u64,
    last: usize,
}

fn next(i: usize) -> usize {
    (i + 1) % 3
}

fn prev(i: usize) -> usize {
    (i + 2) % 3
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [[f64; 2]], seed: [usize; 3]) -> Self {
        let [a, b, c] = seed;
        // Triangle 0 is finite, 1..=3 are the ghosts across its edges.
        let tris = vec![
            Tri {
                v: [a, b, c],
                nb: [1, 2, 3],
            },
            Tri {
                v: [c, b, GHOST],
                nb: [2, 3, 0],
            },
            Tri {
                v: [a, c, GHOST],
                nb: [3, 1, 0],
            },
            Tri {
                v: [b, a, GHOST],
                nb: [1, 2, 0],
            },
        ];
        let mut mesh = Mesh {
            pts,
            alive: vec![true; tris.len()],
            mark: vec![0; tris.len()],
            tris,
            free: Vec::new(),
            stamp: 0,
            last: 0,
        };
        mesh.fix_ghost_links();
        mesh
    }

    /// Recomputes neighbor links of the four seed triangles from scratch.
    fn fix_ghost_links(&mut self) {
        let count = self.tris.len();
        for t in 0..count {
            for i in 0..3 {
                let (u, v) = (self.tris[t].v[next(i)], self.tris[t].v[prev(i)]);
                let across = (0..count)
                    .find(|&s| s != t && (0..3).any(|j| self.tris[s].v[next(j)] == v && self.tris[s].v[prev(j)] == u))
                    .expect("closed seed mesh");
                self.tris[t].nb[i] = across;
            }
        }
    }

    fn coord(&self, v: usize) -> Coord<f64> {
        let p = self.pts[v];
        Coord { x: p[0], y: p[1] }
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        orient2d(self.coord(a), self.coord(b), self.coord(c))
    }

    fn finite_conflict(&self, t: usize, p: usize) -> bool {
        let [a, b, c] = self.tris[t].v;
        let det = incircle(self.coord(a), self.coord(b), self.coord(c), self.coord(p));
        if det != 0.0 {
            return det > 0.0;
        }
        // Co-circular: the lowest-index point carries the dominant lift.
        let lowest = a.min(b).min(c).min(p);
        if lowest == p {
            true
        } else if lowest == a {
            self.orient(p, b, c) < 0.0
        } else if lowest == b {
            self.orient(a, p, c) < 0.0
        } else {
            self.orient(a, b, p) < 0.0
        }
    }

    fn in_conflict(&self, t: usize, p: usize) -> bool {
        let tri = self.tris[t];
        match tri.v.iter().position(|&v| v == GHOST) {
            None => self.finite_conflict(t, p),
            Some(g) => {
                let o = self.orient(tri.v[next(g)], tri.v[prev(g)], p);
                if o != 0.0 {
                    o > 0.0
                } else {
                    self.finite_conflict(tri.nb[g], p)
                }
            }
        }
    }

    fn is_ghost(&self, t: usize) -> bool {
        self.tris[t].v.contains(&GHOST)
    }

    /// Finds a triangle in conflict with `p` by a visibility walk.
    fn locate(&self, p: usize) -> usize {
        let mut t = self.last;
        let limit = 4 * self.tris.len() + 16;
        'walk: for _ in 0..limit {
            let tri = self.tris[t];
            for i in 0..3 {
                if self.orient(tri.v[next(i)], tri.v[prev(i)], p) < 0.0 {
                    t = tri.nb[i];
                    if self.is_ghost(t) {
                        return t;
                    }
                    continue 'walk;
                }
            }
            return t;
        }
        (0..self.tris.len())
            .find(|&t| self.alive[t] && self.in_conflict(t, p))
            .expect("some triangle conflicts with every new point")
    }

    fn alloc(&mut self, tri: Tri) -> usize {
        if let Some(t) = self.free.pop() {
            self.tris[t] = tri;
            self.alive[t] = true;
            t
        } else {
            self.tris.push(tri);
            self.alive.push(true);
            self.mark.push(0);
            self.tris.len() - 1
        }
    }

    fn insert(&mut self, p: usize) {
        self.stamp += 1;
        let (no, yes) = (2 * self.stamp, 2 * self.stamp + 1);
        let start = self.locate(p);
        debug_assert!(self.in_conflict(start, p));

        let mut cavity = vec![start];
        let mut boundary = Vec::new();
        self.mark[start] = yes;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            let tri = self.tris[t];
            for i in 0..3 {
                let s = tri.nb[i];
                if self.mark[s] != yes && self.mark[s] != no {
                    if self.in_conflict(s, p) {
                        self.mark[s] = yes;
                        cavity.push(s);
                        stack.push(s);
                        continue;
                    }
                    self.mark[s] = no;
                }
                if self.mark[s] == no {
                    boundary.push(Boundary {
                        from: tri.v[next(i)],
                        to: tri.v[prev(i)],
                        outer: s,
                    });
                }
            }
        }

        for &t in &cavity {
            self.alive[t] = false;
            self.free.push(t);
        }
        let mut created: Vec<(usize, usize)> = Vec::with_capacity(boundary.len());
        for e in &boundary {
            let t = self.alloc(Tri {
                v: [e.from, e.to, p],
                nb: [GHOST, GHOST, e.outer],
            });
            // Re-point the outer triangle's link at the new triangle.
            let outer = &mut self.tris[e.outer];
            let j = (0..3)
                .find(|&j| outer.v[next(j)] == e.to && outer.v[prev(j)] == e.from)
                .expect("outer triangle shares the boundary edge");
            outer.nb[j] = t;
            created.push((e.from, t));
        }
        created.sort_unstable();
        let lookup = |v: usize| created[created.binary_search_by_key(&v, |&(s, _)| s).expect("cavity is a disk")].1;
        for &(_, t) in &created {
            let [_, to, _] = self.tris[t].v;
            let after = lookup(to);
            self.tris[t].nb[0] = after;
            self.tris[after].nb[1] = t;
        }
        if let Some(&(_, t)) = created.iter().find(|&&(_, t)| !self.is_ghost(t)) {
            self.last = t;
        }
    }

    fn finish(self) -> Triangulation {
        let mut triangles = Vec::new();
        let mut edges = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            if !self.alive[t] || tri.v.contains(&GHOST) {
                continue;
            }
            triangles.push(tri.v);
            for i in 0..3 {
                let (u, v) = (tri.v[next(i)], tri.v[prev(i)]);
                // Each interior edge is seen twice; keep one orientation, and
                // hull edges (ghost on the other side) unconditionally.
                if u < v || self.is_ghost(tri.nb[i]) {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::from_edges(self.pts.len(), edges)
            .and_then(|g| g.with_coords(self.pts.to_vec()))
            .expect("triangle edges are valid");
        Triangulation {
            graph,
            triangles,
            degenerate: false,
        }
    }
}

/// First two points in insertion order plus the first point not collinear
/// with them, arranged counter-clockwise.
fn initial_triangle(points: &[[f64; 2]], order: &[usize]) -> Option<[usize; 3]> {
    let coord = |i: usize| Coord {
        x: points[i][0],
        y: points[i][1],
    };
    let (a, b) = (order[0], order[1]);
    order[2..].iter().find_map(|&c| {
        let o = orient2d(coord(a), coord(b), coord(c));
        if o > 0.0 {
            Some([a, b, c])
        } else if o < 0.0 {
            Some([a, c, b])
        } else {
            None
        }
    })
}

/// Point indices sorted along a Hilbert curve over the bounding box.
fn hilbert_order(points: &[[f64; 2]]) -> Vec<usize> {
    const SIDE: u32 = 1 << 16;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let cell = |x: f64, k: usize| (((x - lo[k]) / span * (SIDE - 1) as f64) as u32).min(SIDE - 1);
    let mut keyed: Vec<(u64, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (hilbert_index(SIDE, cell(p[0], 0), cell(p[1], 1)), i))
        .collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn hilbert_index(side: u32, mut x: u32, mut y: u32) -> u64 {
    let mut d = 0u64;
    let mut s = side / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += u64::from(s) * u64::from(s) * u64::from((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = side - 1 - x;
                y = side - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}
