use serde::Serialize;
use thiserror::Error;

/// Largest weight accepted; weights become synaptic delays.
pub const MAX_WEIGHT: u64 = i64::MAX as u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("weight {0} exceeds the largest representable delay")]
    WeightTooLarge(u64),
}

/// Undirected weighted edge. `index` is the position in the graph's edge
/// list and serves as the tie-break identity between equal weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub weight: u64,
    pub u: usize,
    pub v: usize,
    pub index: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints as `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from `(u, v, weight)` triples.
    pub fn from_edges<I>(vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Graph::new(vertices);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Appends an edge. Parallel edges are kept; self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: u64) -> Result<usize, GraphError> {
        for x in [u, v] {
            if x >= self.vertices {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    count: self.vertices,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if weight > MAX_WEIGHT {
            return Err(GraphError::WeightTooLarge(weight));
        }
        let index = self.edges.len();
        self.edges.push(Edge {
            weight,
            u,
            v,
            index,
        });
        Ok(index)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.edges.iter().map(|e| e.weight).max()
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.edges.iter().map(|e| e.weight).min()
    }

    /// Edge indices incident to each vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.u].push(e.index);
            adj[e.v].push(e.index);
        }
        adj
    }

    /// First pair of parallel edges, if any.
    pub fn find_parallel(&self) -> Option<(Edge, Edge)> {
        let mut seen = std::collections::HashMap::with_capacity(self.edges.len());
        for e in &self.edges {
            if let Some(&first) = seen.get(&e.key()) {
                return Some((self.edges[first], *e));
            }
            seen.insert(e.key(), e.index);
        }
        None
    }

    /// Edge indices sorted by `(weight, index)`.
    pub fn sorted_edge_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.edges.len()).collect();
        idx.sort_by_key(|&i| (self.edges[i].weight, i));
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_bad_vertices() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1, 4), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            g.add_edge(0, 3, 4),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                count: 3
            })
        );
        assert_eq!(g.add_edge(0, 2, 4), Ok(0));
    }

    #[test]
    fn parallel_edges_are_detected() {
        let g = Graph::from_edges(2, [(0, 1, 1), (1, 0, 2)]).unwrap();
        let (a, b) = g.find_parallel().unwrap();
        assert_eq!((a.index, b.index), (0, 1));
        let simple = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(simple.find_parallel().is_none());
    }

    #[test]
    fn sorted_indices_break_ties_by_position() {
        let g = Graph::from_edges(4, [(0, 1, 5), (1, 2, 1), (2, 3, 5), (0, 3, 1)]).unwrap();
        assert_eq!(g.sorted_edge_indices(), vec![1, 3, 0, 2]);
    }
}
