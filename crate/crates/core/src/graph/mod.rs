//! Simple undirected graphs and hypergraphs used as game boards.

mod classify;
mod generate;
mod graph6;
mod hypergraph;

pub use classify::{classify_vertices, LeafType, VertexClassification};
pub use generate::{generate, GeneratorSpec};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_lines};
pub use hypergraph::{open_neighborhood_hypergraph, Hypergraph};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::Generate(format!("self-loop at vertex {u}")));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }

    /// Components isomorphic to K2, as `(u, v)` with `u < v`.
    pub fn isolated_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.degree(u) == 1 && self.degree(v) == 1)
            .collect()
    }

    /// Bitmask of `N(v)`; only valid for graphs with at most 64 vertices.
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        debug_assert!(self.n() <= 64);
        self.adj[v].iter().fold(0u64, |m, &w| m | (1u64 << w))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Subgraph induced by `keep` (sorted, distinct). Vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            g.adj[i].sort_unstable();
        }
        g
    }

    /// Copy with the edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation keeps edges valid");
        }
        g
    }

    /// Disjoint union; component `i` is shifted by the total size of the previous ones.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let total = parts.iter().map(Graph::n).sum();
        let mut g = Graph::empty(total);
        let mut offset = 0;
        for p in parts {
            for v in p.vertices() {
                g.adj[offset + v] = p.adj[v].iter().map(|&w| w + offset).collect();
            }
            offset += p.n();
        }
        g
    }

    /// Upper-triangle adjacency bits in graph6 column order. Two graphs are
    /// identical as labeled graphs iff these keys agree.
    pub fn adjacency_key(&self) -> Vec<bool> {
        let n = self.n();
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                bits.push(self.is_adjacent(i, j));
            }
        }
        bits
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() + 1 == self.n() && self.components().len() == 1
    }

    /// Parses the edge-list format: optional `n <count>` header line, then one
    /// `u v` pair per line. `#` starts a comment. Without a header the vertex
    /// count is one more than the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| Error::EdgeList {
                    line: line_no,
                    reason: format!("expected a vertex index, found {s:?}"),
                })
            };
            match fields.as_slice() {
                ["n", count] if declared.is_none() && edges.is_empty() => {
                    declared = Some(parse(count)?);
                }
                [u, v] => edges.push((parse(u)?, parse(v)?, line_no)),
                _ => {
                    return Err(Error::EdgeList {
                        line: line_no,
                        reason: "expected two vertex indices".into(),
                    })
                }
            }
        }
        let inferred = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
        let n = declared.unwrap_or(inferred);
        let mut g = Graph::empty(n);
        for (u, v, line) in edges {
            g.add_edge(u, v).map_err(|e| Error::EdgeList { line, reason: e.to_string() })?;
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Sorted vertex set, used where deterministic iteration order matters.
pub type VertexSet = BTreeSet<Vertex>;
