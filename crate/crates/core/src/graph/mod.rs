//! Simple undirected graphs on at most 64 vertices.
//!
//! Each vertex owns one `u64` adjacency row, so complement, degree and
//! clique computations reduce to word operations.

mod clique;
mod graph6;

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

pub use graph6::Graph6Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} is outside the supported range 1..=64")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("edge mask needs {pairs} bits but only 64 are available")]
    MaskTooWide { pairs: usize },
}

#[inline]
const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of unordered vertex pairs, `n(n-1)/2`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Ok(Graph::empty(n)?.complement())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from an edge mask whose bit `b` is the `b`-th pair in
    /// graph6 order: `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let pairs = pair_count(n);
        if pairs > 64 {
            return Err(GraphError::MaskTooWide { pairs });
        }
        let mut g = Graph::empty(n)?;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_edge_mask`].
    pub fn edge_mask(&self) -> Result<u64, GraphError> {
        let pairs = pair_count(self.n);
        if pairs > 64 {
            return Err(GraphError::MaskTooWide { pairs });
        }
        let mut mask = 0u64;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        Ok(mask)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Neighbourhood bitset of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn complement(&self) -> Graph {
        let all = low_bits(self.n);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, &r)| !r & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new(self)
    }

    /// Degree deviation `s(G) = sum_u |d(u) - 2m/n|`, exact.
    pub fn degree_deviation(&self) -> Ratio<i64> {
        self.degree_profile().deviation
    }

    /// Size of a largest clique (exact).
    pub fn clique_number(&self) -> usize {
        clique::clique_number(self)
    }

    /// Subgraph induced on `vertices`, relabelled in ascending order.
    /// Duplicates in `vertices` are ignored.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut set = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            set |= 1 << v;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| set >> v & 1 == 1).collect();
        let mut sub = Graph::empty(kept.len())?;
        for (a, &u) in kept.iter().enumerate() {
            for (b, &v) in kept.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sub.rows[a] |= 1 << b;
                    sub.rows[b] |= 1 << a;
                }
            }
        }
        Ok(sub)
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for u in 0..n {
            let mut row = self.rows[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                a[u * n + v] = 1.0;
                row &= row - 1;
            }
        }
        a
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode(text)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}

/// Degree statistics used by the spread bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    /// `2m/n`
    pub mean: Ratio<i64>,
    /// `s(G)`
    pub deviation: Ratio<i64>,
}

impl DegreeProfile {
    pub fn new(g: &Graph) -> Self {
        let degrees = g.degrees();
        let n = g.order() as i64;
        let twice_m: i64 = degrees.iter().map(|&d| d as i64).sum();
        // |d - 2m/n| = |n d - 2m| / n
        let numer: i64 = degrees
            .iter()
            .map(|&d| (n * d as i64 - twice_m).abs())
            .sum();
        DegreeProfile {
            degrees,
            mean: Ratio::new(twice_m, n),
            deviation: Ratio::new(numer, n),
        }
    }
}
