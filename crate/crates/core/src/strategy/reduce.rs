//! Preprocessing for the general strategy: duplicate leaves are dropped and
//! the minimal-counterexample structure is checked.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// Move translation between a board and its reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLift {
    /// Reduced vertex to original vertex.
    pub to_original: Vec<Vertex>,
    /// Original vertex to reduced vertex; removed leaves map to their
    /// surviving sibling.
    pub to_reduced: Vec<Vertex>,
    /// Original vertices that were removed.
    pub removed: Vec<Vertex>,
}

impl MoveLift {
    pub fn identity(n: usize) -> Self {
        MoveLift { to_original: (0..n).collect(), to_reduced: (0..n).collect(), removed: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn lift(&self, v: Vertex) -> Vertex {
        self.to_original[v]
    }

    /// Original move to reduced move: a removed leaf `z` is read as its
    /// sibling `y`.
    pub fn lower(&self, v: Vertex) -> Vertex {
        self.to_reduced[v]
    }
}

/// Keeps only the lowest-index leaf of every parent. Removing leaves never
/// creates new leaves except when a parent is left with a single neighbor,
/// which is then an isolated edge and is left for the caller to flag.
pub fn reduce_duplicate_leaves(g: &Graph) -> (Graph, MoveLift) {
    let n = g.n();
    let is_leaf = |v: Vertex| g.degree(v) == 1;
    let mut sibling: Vec<Option<Vertex>> = vec![None; n];
    for p in g.vertices() {
        let leaves: Vec<Vertex> = g.neighbors(p).iter().copied().filter(|&l| is_leaf(l)).collect();
        // On an isolated edge both ends are leaves of each other; keep both.
        if is_leaf(p) || leaves.len() < 2 {
            continue;
        }
        for &z in &leaves[1..] {
            sibling[z] = Some(leaves[0]);
        }
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&v| sibling[v].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let to_reduced = (0..n).map(|v| index[sibling[v].unwrap_or(v)]).collect();
    let removed = g.vertices().filter(|&v| sibling[v].is_some()).collect();
    (g.induced(&keep), MoveLift { to_original: keep, to_reduced, removed })
}

/// Parent-neighbor pairs `(u, v)` where `G - uv` has no isolated edge, i.e.
/// where the board breaks the structure a minimal counterexample must have.
pub fn parent_edge_violations(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in g.vertices() {
        if g.degree(u) == 1 {
            continue;
        }
        let Some(&w) = g.neighbors(u).iter().find(|&&x| g.degree(x) == 1) else { continue };
        for &v in g.neighbors(u) {
            if v == w || g.degree(v) == 1 {
                continue;
            }
            if g.without_edge(u, v).isolated_edges().is_empty() {
                out.push((u, v));
            }
        }
    }
    out
}

/// Everything that puts a board outside the proof's assumptions for the
/// general strategy. Empty means the phase claims are expected to hold.
pub fn structural_issues(g: &Graph) -> Vec<String> {
    let mut issues = Vec::new();
    let edges = g.isolated_edges();
    if !edges.is_empty() {
        issues.push(format!("isolated edges {edges:?}"));
    }
    for p in g.vertices() {
        let leaves = g.neighbors(p).iter().filter(|&&l| g.degree(l) == 1).count();
        if g.degree(p) > 1 && leaves > 1 {
            issues.push(format!("parent {p} owns {leaves} leaves"));
        }
    }
    let cut = parent_edge_violations(g);
    if !cut.is_empty() {
        issues.push(format!("G - uv keeps no isolated edge for {cut:?}"));
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn star_reduces_to_an_edge() {
        let g = generate(&GeneratorSpec::Star(3)).unwrap();
        let (r, lift) = reduce_duplicate_leaves(&g);
        assert_eq!(r.n(), 2);
        assert_eq!(r.isolated_edges(), vec![(0, 1)]);
        assert_eq!(lift.removed, vec![2, 3]);
        assert_eq!(lift.lower(3), lift.lower(1));
        assert_eq!(lift.lift(lift.lower(2)), 1);
    }

    #[test]
    fn path_four_unchanged() {
        let g = generate(&GeneratorSpec::Path(4)).unwrap();
        let (r, lift) = reduce_duplicate_leaves(&g);
        assert_eq!(r, g);
        assert!(lift.is_identity());
        assert!(structural_issues(&g).is_empty());
    }

    #[test]
    fn double_star_becomes_path() {
        // Centers 0 and 1, leaves 2,3 on 0 and 4,5 on 1.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let (r, lift) = reduce_duplicate_leaves(&g);
        assert_eq!(r.n(), 4);
        assert_eq!(r.edge_count(), 3);
        assert_eq!(r.max_degree(), 2);
        assert_eq!(lift.removed, vec![3, 5]);
        assert_eq!(lift.lower(5), lift.lower(4));
    }

    #[test]
    fn long_path_breaks_parent_edge_structure() {
        // In P6 the parent 1 with leaf 0 has neighbor 2, and P6 - {1,2} keeps
        // the edge 0-1 isolated, so that pair is fine; P7 behaves the same way.
        let g = generate(&GeneratorSpec::Path(6)).unwrap();
        assert!(parent_edge_violations(&g).is_empty());
        // A leaf hanging off a triangle vertex: removing a triangle edge at the
        // parent leaves no isolated edge.
        let h = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert_eq!(parent_edge_violations(&h), vec![(0, 1), (0, 2)]);
        assert!(!structural_issues(&h).is_empty());
    }
}
