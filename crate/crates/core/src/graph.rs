//! Finite undirected graphs with 1-based vertex labels.
//!
//! Neighborhoods are stored as bitmasks (bit `v - 1` stands for vertex `v`), so
//! a graph may have at most [`MAX_VERTICES`] vertices. Loops are allowed.

use std::fmt;

use thiserror::Error;

/// Upper bound on the number of vertices; neighborhoods are `u64` masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("cycle graphs need at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("path graphs need at least 2 vertices, got {0}")]
    PathTooShort(usize),
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("vertex {vertex} is outside 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
}

/// An immutable finite graph on the vertex set `1..=vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    neighbors: Vec<u64>,
}

impl Graph {
    /// Builds a graph from unordered edges; `(v, v)` is a loop.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(GraphError::VertexCount(vertex_count));
        }
        let mut neighbors = vec![0u64; vertex_count];
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: v, count: vertex_count });
                }
            }
            neighbors[a - 1] |= bit(b);
            neighbors[b - 1] |= bit(a);
        }
        Ok(Self { neighbors })
    }

    /// The cycle `C_n`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        Self::from_edges(n, (1..=n).map(|x| (x, x % n + 1)))
    }

    /// The path `L_n` (the n-string).
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::PathTooShort(n));
        }
        Self::from_edges(n, (1..n).map(|x| (x, x + 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.vertex_count()
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.vertex_count())
    }

    /// Neighborhood `N(v)` as a bitmask.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.neighbors[v - 1]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        mask_to_vec(self.neighbor_mask(v))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a - 1] & bit(b) != 0
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Edges as ordered pairs `(a, b)` with `a <= b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.neighbors(a) {
                if a <= b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Vertices common to the neighborhoods of every vertex in `mask`.
    ///
    /// The empty mask yields every vertex.
    pub fn common_neighbors(&self, mask: u64) -> u64 {
        iter_bits(mask).fold(self.vertex_mask(), |acc, v| acc & self.neighbor_mask(v))
    }

    /// Unordered pairs `(u, v)`, `u < v`, with `N(u) = N(v)`.
    pub fn twins(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in (u + 1)..=self.vertex_count() {
                if self.neighbor_mask(u) == self.neighbor_mask(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = bit(1);
        let mut frontier = bit(1);
        while frontier != 0 {
            let next = iter_bits(frontier).fold(0, |acc, v| acc | self.neighbor_mask(v));
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    /// Deletes `v` and shifts the labels above it down by one.
    ///
    /// Returns the new graph and the relabeling: entry `w - 1` holds the new label of
    /// the old vertex `w`, or `None` for `v` itself.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        let count = self.vertex_count();
        if v == 0 || v > count {
            return Err(GraphError::VertexOutOfRange { vertex: v, count });
        }
        let relabel: Vec<Option<usize>> = self
            .vertices()
            .map(|w| match w.cmp(&v) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(w - 1),
            })
            .collect();
        let edges = self
            .edges()
            .into_iter()
            .filter_map(|(a, b)| Some((relabel[a - 1]?, relabel[b - 1]?)));
        let graph = Graph::from_edges(count - 1, edges)?;
        Ok((graph, relabel))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

pub(crate) fn bit(v: usize) -> u64 {
    1u64 << (v - 1)
}

pub(crate) fn full_mask(count: usize) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

/// Vertex labels (1-based) of the set bits, ascending.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize + 1;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    iter_bits(mask).collect()
}

pub fn vec_to_mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |acc, &v| acc | bit(v))
}

/// All nonempty submasks of `mask`, in decreasing numeric order.
pub(crate) fn nonempty_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = sub;
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & mask;
        if sub == 0 {
            done = true;
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::cycle(3).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn four_cycle_neighborhoods() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(g.neighbors(1), vec![2, 4]);
        assert_eq!(g.neighbors(3), vec![2, 4]);
        assert_eq!(g.twins(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn rejects_short_families() {
        assert_eq!(Graph::cycle(2), Err(GraphError::CycleTooShort(2)));
        assert_eq!(Graph::path(1), Err(GraphError::PathTooShort(1)));
    }

    #[test]
    fn paths() {
        assert_eq!(Graph::path(2).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(Graph::path(3).unwrap().edges(), vec![(1, 2), (2, 3)]);
        assert_eq!(Graph::path(3).unwrap().twins(), vec![(1, 3)]);
    }

    #[test]
    fn odd_cycles_have_no_twins() {
        assert!(Graph::cycle(5).unwrap().twins().is_empty());
    }

    #[test]
    fn cycles_are_two_regular_and_connected() {
        for n in 3..=20 {
            let g = Graph::cycle(n).unwrap();
            assert_eq!(g.edge_count(), n);
            assert!(g.vertices().all(|v| g.neighbors(v).len() == 2));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn twins_share_neighborhoods() {
        let g = Graph::from_edges(6, [(1, 2), (1, 3), (4, 2), (4, 3), (5, 5), (5, 6), (6, 6)])
            .unwrap();
        for (u, v) in g.twins() {
            for w in g.vertices() {
                assert_eq!(g.has_edge(u, w), g.has_edge(v, w));
            }
        }
        assert!(g.twins().contains(&(1, 4)));
        assert!(g.twins().contains(&(5, 6)));
    }

    #[test]
    fn delete_vertex_relabels() {
        let (g, relabel) = Graph::cycle(4).unwrap().delete_vertex(3).unwrap();
        assert_eq!(relabel, vec![Some(1), Some(2), None, Some(3)]);
        assert_eq!(g.edges(), vec![(1, 2), (1, 3)]);
    }

    #[test]
    fn submasks() {
        let subs: Vec<u64> = nonempty_submasks(0b101).collect();
        assert_eq!(subs, vec![0b101, 0b100, 0b001]);
        assert_eq!(nonempty_submasks(0).count(), 0);
    }
}
