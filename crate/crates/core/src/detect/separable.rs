use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// A set `A` with pairwise disjoint triples `B_v ⊆ N(v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub a: Vec<Vertex>,
    pub b: BTreeMap<Vertex, [Vertex; 3]>,
}

impl SeparationCertificate {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.b.contains_key(&v)
    }

    /// Adds `v` with `triple` unless that would break disjointness.
    pub fn try_insert(&mut self, v: Vertex, triple: [Vertex; 3]) -> bool {
        if self.b.contains_key(&v) || self.b.values().flatten().any(|x| triple.contains(x)) {
            return false;
        }
        self.a.push(v);
        self.b.insert(v, triple);
        true
    }

    pub fn remove(&mut self, v: Vertex) {
        self.a.retain(|&x| x != v);
        self.b.remove(&v);
    }

    /// Owner of `x` if `x` lies in some `B_v`.
    pub fn owner_of(&self, x: Vertex) -> Option<Vertex> {
        self.b.iter().find(|(_, t)| t.contains(&x)).map(|(&v, _)| v)
    }

    /// Structural check. With `white`, every triple must be white; with
    /// `eligible`, every member of `A` must be eligible (unplayed).
    pub fn is_valid(&self, g: &Graph, white: Option<&[bool]>, eligible: Option<&[bool]>) -> bool {
        if self.a.len() != self.b.len() || self.a.iter().any(|v| !self.b.contains_key(v)) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for (&v, t) in &self.b {
            if eligible.is_some_and(|e| !e[v]) {
                return false;
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return false;
            }
            for &x in t {
                if !g.is_adjacent(v, x) || seen[x] || white.is_some_and(|w| !w[x]) {
                    return false;
                }
                seen[x] = true;
            }
        }
        true
    }
}

/// Bipartite b-matching: each chosen candidate takes three of its white
/// neighbors, each white vertex serves at most one candidate.
#[derive(Clone)]
struct Matching<'a> {
    nbrs: &'a [Vec<Vertex>],
    owner: Vec<Option<usize>>,
}

impl<'a> Matching<'a> {
    fn new(nbrs: &'a [Vec<Vertex>], n: usize) -> Self {
        Matching { nbrs, owner: vec![None; n] }
    }

    fn augment(&mut self, c: usize, seen: &mut [bool]) -> bool {
        for &r in &self.nbrs[c] {
            if seen[r] || self.owner[r] == Some(c) {
                continue;
            }
            seen[r] = true;
            let free = match self.owner[r] {
                None => true,
                Some(o) => self.augment(o, seen),
            };
            if free {
                self.owner[r] = Some(c);
                return true;
            }
        }
        false
    }

    /// Routes up to `want` more units to `c`; returns how many succeeded.
    fn fill(&mut self, c: usize, want: usize) -> usize {
        let mut got = 0;
        while got < want {
            let mut seen = vec![false; self.owner.len()];
            if !self.augment(c, &mut seen) {
                break;
            }
            got += 1;
        }
        got
    }
}

/// Maximum set of eligible vertices admitting a white triple separation.
/// Exact: depth-first branch and bound, include-first in index order, pruned
/// by the fractional bound `floor(maxflow / 3)`.
pub fn max_white_separable(g: &Graph, white: &[bool], eligible: &[bool]) -> SeparationCertificate {
    let n = g.n();
    let cands: Vec<Vertex> = g
        .vertices()
        .filter(|&v| eligible[v] && g.neighbors(v).iter().filter(|&&x| white[x]).count() >= 3)
        .collect();
    let nbrs: Vec<Vec<Vertex>> = cands
        .iter()
        .map(|&v| g.neighbors(v).iter().copied().filter(|&x| white[x]).collect())
        .collect();
    let mut bnb = BranchAndBound { nbrs: &nbrs, best: Vec::new(), chosen: Vec::new() };
    let start = Matching::new(&nbrs, n);
    bnb.search(0, &start);
    let best = bnb.best;

    let mut m = Matching::new(&nbrs, n);
    for &c in &best {
        let got = m.fill(c, 3);
        debug_assert_eq!(got, 3);
    }
    let mut cert = SeparationCertificate::default();
    for &c in &best {
        let triple: Vec<Vertex> = (0..n).filter(|&r| m.owner[r] == Some(c)).collect();
        cert.a.push(cands[c]);
        cert.b.insert(cands[c], [triple[0], triple[1], triple[2]]);
    }
    cert
}

struct BranchAndBound<'a> {
    nbrs: &'a [Vec<Vertex>],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl BranchAndBound<'_> {
    fn upper_bound(&self, idx: usize, m: &Matching) -> usize {
        let mut relaxed = m.clone();
        let mut flow = 3 * self.chosen.len();
        for c in idx..self.nbrs.len() {
            flow += relaxed.fill(c, 3);
        }
        flow / 3
    }

    fn search(&mut self, idx: usize, m: &Matching) {
        let remaining = self.nbrs.len() - idx;
        if self.chosen.len() + remaining <= self.best.len() {
            return;
        }
        if idx == self.nbrs.len() {
            self.best = self.chosen.clone();
            return;
        }
        if self.upper_bound(idx, m) <= self.best.len() {
            return;
        }
        let mut with = m.clone();
        if with.fill(idx, 3) == 3 {
            self.chosen.push(idx);
            self.search(idx + 1, &with);
            self.chosen.pop();
        }
        self.search(idx + 1, m);
    }
}

/// `M`: the largest set with any triple separation (everything white,
/// nothing played).
pub fn max_triple_separation(g: &Graph) -> SeparationCertificate {
    let all = vec![true; g.n()];
    max_white_separable(g, &all, &all)
}

/// Exhaustive oracle over all subsets of candidates and all triple choices.
/// Exponential; only for tests on small graphs.
pub fn brute_force_separable_size(g: &Graph, white: &[bool], eligible: &[bool]) -> usize {
    let cands: Vec<Vertex> = g
        .vertices()
        .filter(|&v| eligible[v] && g.neighbors(v).iter().filter(|&&x| white[x]).count() >= 3)
        .collect();
    fn triples(xs: &[Vertex]) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                for k in j + 1..xs.len() {
                    out.push([xs[i], xs[j], xs[k]]);
                }
            }
        }
        out
    }
    fn rec(g: &Graph, white: &[bool], cands: &[Vertex], idx: usize, used: &mut Vec<bool>) -> usize {
        if idx == cands.len() {
            return 0;
        }
        let mut best = rec(g, white, cands, idx + 1, used);
        let free: Vec<Vertex> =
            g.neighbors(cands[idx]).iter().copied().filter(|&x| white[x] && !used[x]).collect();
        for t in triples(&free) {
            for &x in &t {
                used[x] = true;
            }
            best = best.max(1 + rec(g, white, cands, idx + 1, used));
            for &x in &t {
                used[x] = false;
            }
        }
        best
    }
    let mut used = vec![false; g.n()];
    rec(g, white, &cands, 0, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn cycle_has_none() {
        let g = generate(&GeneratorSpec::Cycle(7)).unwrap();
        assert!(max_triple_separation(&g).is_empty());
    }

    #[test]
    fn stars() {
        let g = generate(&GeneratorSpec::Star(3)).unwrap();
        let c = max_triple_separation(&g);
        assert_eq!(c.a, vec![0]);
        let two = Graph::disjoint_union(&[g.clone(), g]);
        let c = max_triple_separation(&two);
        assert_eq!(c.len(), 2);
        assert!(c.is_valid(&two, Some(&[true; 8]), None));
    }

    #[test]
    fn greedy_is_not_enough() {
        // Vertex 0 would greedily take {3,4,5}; the optimum uses 1 and 2.
        let g = Graph::from_edges(
            9,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 6), (1, 7), (2, 4), (2, 8), (2, 5)],
        )
        .unwrap();
        let white: Vec<bool> = (0..9).map(|v| v >= 3).collect();
        let eligible = vec![true; 9];
        let c = max_white_separable(&g, &white, &eligible);
        assert_eq!(c.len(), brute_force_separable_size(&g, &white, &eligible));
        assert!(c.is_valid(&g, Some(&white), Some(&eligible)));
    }

    #[test]
    fn greedy_counterexample_needs_search() {
        // v1:{a,b,c}, v2:{a,d,e}, v3:{b,f,g}: taking v1 first blocks both others.
        let (v1, v2, v3, a, b, c, d, e, f, gg) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
        let g = Graph::from_edges(
            10,
            &[(v1, a), (v1, b), (v1, c), (v2, a), (v2, d), (v2, e), (v3, b), (v3, f), (v3, gg)],
        )
        .unwrap();
        let white: Vec<bool> = (0..10).map(|v| v >= 3).collect();
        let c = max_white_separable(&g, &white, &[true; 10]);
        assert_eq!(c.a, vec![v2, v3]);
    }

    #[test]
    fn played_vertices_excluded() {
        let g = generate(&GeneratorSpec::Star(3)).unwrap();
        let eligible = vec![false, true, true, true];
        assert!(max_white_separable(&g, &[true; 4], &eligible).is_empty());
    }
}
