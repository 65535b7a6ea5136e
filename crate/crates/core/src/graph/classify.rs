use std::collections::BTreeMap;

use serde::Serialize;

use super::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeafType {
    /// The parent is not adjacent to any other parent.
    A,
    /// The parent is adjacent to at least one other parent.
    B,
}

/// Leaf / parent / grandparent / rest partition of the vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub leaves: VertexSet,
    pub parents: VertexSet,
    pub grandparents: VertexSet,
    pub rest: VertexSet,
    pub leaf_type: BTreeMap<Vertex, LeafType>,
    pub parent_of: BTreeMap<Vertex, Vertex>,
    /// Defined for a type-A leaf and for its parent when the parent has
    /// exactly two neighbors.
    pub grandparent_of: BTreeMap<Vertex, Vertex>,
}

impl VertexClassification {
    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.leaves.contains(&v)
    }

    pub fn is_parent(&self, v: Vertex) -> bool {
        self.parents.contains(&v)
    }

    pub fn is_grandparent(&self, v: Vertex) -> bool {
        self.grandparents.contains(&v)
    }

    /// The leaf hanging off parent `p` (lowest index if there are several).
    pub fn leaf_of(&self, p: Vertex) -> Option<Vertex> {
        self.parent_of.iter().find(|&(_, &q)| q == p).map(|(&l, _)| l)
    }
}

pub fn classify_vertices(g: &Graph) -> VertexClassification {
    let mut c = VertexClassification::default();
    for v in g.vertices() {
        if g.degree(v) == 1 {
            c.leaves.insert(v);
            c.parent_of.insert(v, g.neighbors(v)[0]);
        }
    }
    // A vertex that is both a leaf and a parent only happens on isolated
    // edges; it stays a leaf.
    for &p in c.parent_of.values() {
        if !c.leaves.contains(&p) {
            c.parents.insert(p);
        }
    }
    for (&leaf, &parent) in &c.parent_of {
        let type_b = g.neighbors(parent).iter().any(|&w| w != leaf && c.parents.contains(&w));
        let t = if type_b { LeafType::B } else { LeafType::A };
        c.leaf_type.insert(leaf, t);
        if t == LeafType::A && g.degree(parent) == 2 {
            let z = *g.neighbors(parent).iter().find(|&&w| w != leaf).expect("degree two");
            c.grandparent_of.insert(leaf, z);
            c.grandparent_of.insert(parent, z);
            if !c.leaves.contains(&z) && !c.parents.contains(&z) {
                c.grandparents.insert(z);
            }
        }
    }
    for v in g.vertices() {
        if !c.leaves.contains(&v) && !c.parents.contains(&v) && !c.grandparents.contains(&v) {
            c.rest.insert(v);
        }
    }
    c
}
