use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::complex::{check_permutation, PolyhedralComplex};
use crate::error::{Error, Result};

/// Undirected simple connected graph stored as sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// disconnected inputs are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut neighbors = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {vertex_count} vertices"
                )));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        let g = Self { neighbors };
        if !g.is_connected_without(&[]) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Sorted edge list with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.neighbors.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> nalgebra::DMatrix<f64> {
        let n = self.vertex_count();
        nalgebra::DMatrix::from_fn(n, n, |i, j| if self.is_adjacent(i, j) { 1.0 } else { 0.0 })
    }

    /// Connectivity of the graph with `removed` vertices deleted.
    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut dead = vec![false; n];
        for &r in removed {
            dead[r] = true;
        }
        let Some(start) = (0..n).find(|&v| !dead[v]) else {
            return true;
        };
        let mut seen = dead.clone();
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.neighbors[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached + removed.len() == n
    }

    /// All-pairs shortest path lengths by breadth-first search.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        (0..n)
            .map(|s| {
                let mut dist = vec![usize::MAX; n];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for &u in &self.neighbors[v] {
                        if dist[u] == usize::MAX {
                            dist[u] = dist[v] + 1;
                            queue.push_back(u);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// Same graph with vertex `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.vertex_count())?;
        let edges: Vec<_> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Self::from_edges(self.vertex_count(), &edges)
    }
}

/// The 1-skeleton of a complex.
pub fn skeleton(complex: &PolyhedralComplex) -> Graph {
    let g = Graph::from_edges(complex.vertex_count(), complex.edges());
    // A closed surface passing the Euler check is connected.
    g.expect("skeleton of a valid complex is connected")
}
