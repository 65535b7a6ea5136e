use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Hypergraph on `0..n` with a multiset of edges (each stored sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            e.sort_unstable();
            e.dedup();
            out.push(e);
        }
        Ok(Hypergraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: Vertex) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    /// `H^m`: `m` disjoint copies, copy `i` shifted by `i * n`.
    pub fn copies(&self, m: usize) -> Hypergraph {
        let mut edges = Vec::with_capacity(self.edges.len() * m);
        for i in 0..m {
            for e in &self.edges {
                edges.push(e.iter().map(|&v| v + i * self.n).collect());
            }
        }
        Hypergraph { n: self.n * m, edges }
    }
}

/// One edge `N(x)` per vertex `x`, in vertex order.
pub fn open_neighborhood_hypergraph(g: &Graph) -> Result<Hypergraph> {
    if let Some(v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(*v));
    }
    let edges = g.vertices().map(|x| g.neighbors(x).to_vec()).collect();
    Hypergraph::new(g.n(), edges)
}
