//! Undirected simple graphs with optional planar coordinates.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("coordinate count {coords} does not match vertex count {n}")]
    CoordinateCount { coords: usize, n: usize },
}

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted and free of duplicates and self-loops, and the
/// relation is symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    coords: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            coords: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, coords: None })
    }

    /// Like [`Graph::from_edges`] but silently drops self-loops.
    pub fn from_edges_dropping_loops<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().filter(|&(u, v)| u != v))
    }

    /// Attaches planar coordinates, one per vertex.
    pub fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Result<Self, GraphError> {
        if coords.len() != self.n() {
            return Err(GraphError::CoordinateCount {
                coords: coords.len(),
                n: self.n(),
            });
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted neighbor list of `u`.
    pub fn neighbor_index(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].binary_search(&v).ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// New graph with `extra` edges added; existing edges are kept, coordinates
    /// carried over.
    pub fn with_edges_added<I>(&self, extra: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::from_edges(self.n(), self.edges().chain(extra))?;
        g.coords = self.coords.clone();
        Ok(g)
    }

    /// Breadth-first hop distances from `source`; `None` marks unreachable.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Component label per vertex (labels are `0..count`, ordered by the
    /// smallest vertex they contain) and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().1 == 1
    }

    /// Induced subgraph on the largest connected component (ties go to the
    /// component holding the smallest vertex). Returns the subgraph and the
    /// original index of each of its vertices.
    pub fn largest_component(&self) -> (Graph, Vec<usize>) {
        let (label, count) = self.components();
        if count <= 1 {
            return (self.clone(), (0..self.n()).collect());
        }
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap();
        let keep: Vec<usize> = (0..self.n()).filter(|&v| label[v] == best).collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `keep` (which must be sorted and duplicate free).
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (new_index[w] != usize::MAX).then_some(new_index[w]))
                    .collect()
            })
            .collect();
        let coords = self.coords.as_ref().map(|c| keep.iter().map(|&v| c[v]).collect());
        (Graph { adj, coords }, keep.to_vec())
    }

    /// Checks the structural invariants; used by tests and input validation.
    pub fn validate(&self) -> Result<(), String> {
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbors of {u} not strictly sorted"));
            }
            for &v in list {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v >= self.n() || !self.has_edge(v, u) {
                    return Err(format!("asymmetric edge {u} -> {v}"));
                }
            }
        }
        Ok(())
    }
}
