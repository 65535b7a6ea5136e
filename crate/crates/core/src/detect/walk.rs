use serde::Serialize;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WalkKind {
    Walk,
    /// `v_k` is also adjacent to `w_1`.
    Circuit,
    /// A 2-walk whose `v_2` has `w_2` as its only white neighbor.
    Terminal,
}

/// `w_1 v_1 ... w_k v_k`: the `w` are distinct white vertices, the `v` are
/// distinct, `w_i ~ v_i` and `v_i ~ w_{i+1}`. A `v` may coincide with a `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Walk {
    pub w: Vec<Vertex>,
    pub v: Vec<Vertex>,
    pub kind: WalkKind,
}

impl Walk {
    pub fn k(&self) -> usize {
        self.w.len()
    }

    /// Checks every defining condition from scratch.
    pub fn is_valid(&self, g: &Graph, white: &[bool]) -> bool {
        let k = self.w.len();
        if k == 0 || self.v.len() != k {
            return false;
        }
        let distinct = |xs: &[Vertex]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|p| p[0] != p[1])
        };
        if !distinct(&self.w) || !distinct(&self.v) {
            return false;
        }
        if self.w.iter().chain(&self.v).any(|&x| x >= g.n()) {
            return false;
        }
        if !self.w.iter().all(|&x| white[x]) {
            return false;
        }
        for i in 0..k {
            if !g.is_adjacent(self.w[i], self.v[i]) {
                return false;
            }
            if i + 1 < k && !g.is_adjacent(self.v[i], self.w[i + 1]) {
                return false;
            }
        }
        match self.kind {
            WalkKind::Walk => true,
            WalkKind::Circuit => g.is_adjacent(self.v[k - 1], self.w[0]),
            WalkKind::Terminal => {
                k == 2 && g.neighbors(self.v[1]).iter().all(|&x| x == self.w[1] || !white[x])
            }
        }
    }
}

/// Lexicographically least walk in `(w_1, v_1, w_2, ...)` order, if any.
pub fn find_walk(g: &Graph, white: &[bool], k: usize, kind: WalkKind) -> Option<Walk> {
    assert!(k >= 1, "walks have at least one pair");
    assert!(kind != WalkKind::Terminal || k == 2, "terminal walks are 2-walks");
    if white.iter().filter(|&&b| b).count() < k {
        return None;
    }
    let mut search = Search {
        g,
        white,
        k,
        kind,
        w: Vec::with_capacity(k),
        v: Vec::with_capacity(k),
        used_w: vec![false; g.n()],
        used_v: vec![false; g.n()],
    };
    for x in g.vertices() {
        if white[x] && search.extend_w(x) {
            return Some(Walk { w: search.w, v: search.v, kind });
        }
    }
    None
}

/// Least walk whose `v_1` is `v1`.
pub fn find_walk_from(
    g: &Graph,
    white: &[bool],
    k: usize,
    kind: WalkKind,
    v1: Vertex,
) -> Option<Walk> {
    assert!(k >= 1, "walks have at least one pair");
    assert!(kind != WalkKind::Terminal || k == 2, "terminal walks are 2-walks");
    let mut search = Search {
        g,
        white,
        k,
        kind,
        w: Vec::with_capacity(k),
        v: Vec::with_capacity(k),
        used_w: vec![false; g.n()],
        used_v: vec![false; g.n()],
    };
    for &x in g.neighbors(v1) {
        if !white[x] {
            continue;
        }
        search.w.push(x);
        search.used_w[x] = true;
        if search.extend_v(v1) {
            return Some(Walk { w: search.w, v: search.v, kind });
        }
        search.used_w[x] = false;
        search.w.pop();
    }
    None
}

struct Search<'a> {
    g: &'a Graph,
    white: &'a [bool],
    k: usize,
    kind: WalkKind,
    w: Vec<Vertex>,
    v: Vec<Vertex>,
    used_w: Vec<bool>,
    used_v: Vec<bool>,
}

impl Search<'_> {
    fn extend_w(&mut self, x: Vertex) -> bool {
        self.w.push(x);
        self.used_w[x] = true;
        let g = self.g;
        for &y in g.neighbors(x) {
            if !self.used_v[y] && self.extend_v(y) {
                return true;
            }
        }
        self.used_w[x] = false;
        self.w.pop();
        false
    }

    fn extend_v(&mut self, y: Vertex) -> bool {
        if self.v.len() + 1 == self.k {
            let ok = match self.kind {
                WalkKind::Walk => true,
                WalkKind::Circuit => self.g.is_adjacent(y, self.w[0]),
                WalkKind::Terminal => {
                    let last = self.w[self.k - 1];
                    self.g.neighbors(y).iter().all(|&x| x == last || !self.white[x])
                }
            };
            if ok {
                self.v.push(y);
            }
            return ok;
        }
        self.v.push(y);
        self.used_v[y] = true;
        let g = self.g;
        for &x in g.neighbors(y) {
            if self.white[x] && !self.used_w[x] && self.extend_w(x) {
                return true;
            }
        }
        self.used_v[y] = false;
        self.v.pop();
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn all_white(g: &Graph) -> Vec<bool> {
        vec![true; g.n()]
    }

    #[test]
    fn four_cycle_two_circuit() {
        let g = generate(&GeneratorSpec::Cycle(4)).unwrap();
        let w = find_walk(&g, &all_white(&g), 2, WalkKind::Circuit).unwrap();
        assert_eq!((w.w.clone(), w.v.clone()), (vec![0, 2], vec![1, 3]));
        assert!(w.is_valid(&g, &all_white(&g)));
    }

    #[test]
    fn path_terminal_walk() {
        let g = generate(&GeneratorSpec::Path(4)).unwrap();
        let w = find_walk(&g, &all_white(&g), 2, WalkKind::Terminal).unwrap();
        assert_eq!((w.w, w.v), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn seven_cycle_six_walk_reuses_vertices() {
        // Only the w's and the v's are pairwise distinct, so 12 slots fit in 7
        // vertices.
        let g = generate(&GeneratorSpec::Cycle(7)).unwrap();
        let w = find_walk(&g, &all_white(&g), 6, WalkKind::Walk).unwrap();
        assert_eq!(w.w, vec![0, 2, 4, 6, 1, 3]);
        assert_eq!(w.v, vec![1, 3, 5, 0, 2, 4]);
        assert!(w.is_valid(&g, &all_white(&g)));
        assert!(find_walk(&g, &all_white(&g), 7, WalkKind::Circuit).is_some());
    }

    #[test]
    fn short_path_has_no_long_walk() {
        let g = generate(&GeneratorSpec::Path(5)).unwrap();
        assert!(find_walk(&g, &all_white(&g), 5, WalkKind::Walk).is_none());
    }

    #[test]
    fn triangle_three_circuit_reuses_vertices() {
        let g = generate(&GeneratorSpec::Cycle(3)).unwrap();
        let w = find_walk(&g, &all_white(&g), 3, WalkKind::Circuit).unwrap();
        assert_eq!((w.w, w.v), (vec![0, 2, 1], vec![1, 0, 2]));
    }

    #[test]
    fn black_vertices_are_skipped() {
        let g = generate(&GeneratorSpec::Cycle(4)).unwrap();
        let white = vec![false, true, true, true];
        let w = find_walk(&g, &white, 2, WalkKind::Circuit).unwrap();
        assert_eq!((w.w, w.v), (vec![1, 3], vec![0, 2]));
        assert!(find_walk(&g, &white, 4, WalkKind::Walk).is_none());
    }

    #[test]
    fn walk_from_fixed_start() {
        let g = generate(&GeneratorSpec::Cycle(4)).unwrap();
        let w = find_walk_from(&g, &all_white(&g), 2, WalkKind::Circuit, 3).unwrap();
        assert_eq!(w.v[0], 3);
        assert!(w.is_valid(&g, &all_white(&g)));
        let white = vec![true, false, true, false];
        assert!(find_walk_from(&g, &white, 2, WalkKind::Circuit, 1).is_some());
        assert!(find_walk_from(&g, &white, 2, WalkKind::Circuit, 0).is_none());
    }
}
