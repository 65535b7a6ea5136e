//! The white-vertex configurations that drive the third phase of the
//! minimum-degree-2 strategy.
//!
//! Setup: a white `u` with neighbors `v1, v2, v3`, each `vi` with a second
//! white neighbor `wi`, and neighbors `x1 ~ w1`, `x2 ~ w2` with `x1 != x2`.
//! The tags follow the proof's case split in order; cases the proof reduces
//! to earlier ones by relabeling are returned already relabeled.

use serde::Serialize;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConfigTag {
    /// `x1` and `x2` are both adjacent to `w3`.
    BothAdjW3,
    /// `x1 ~ w3`, `x2` has white neighbor `y`, `y ~ z`, and `z`'s other white
    /// neighbor is `a = u`.
    AEqualsU,
    /// As above with `a = w3`.
    AEqualsW3,
    /// Neither `x1` nor `x2` is adjacent to `w3`; their other white
    /// neighbors `y` and `y2` differ.
    DistinctY,
    /// As above with a shared `y`, and the other white neighbor of `x3` is `y`.
    SharedY,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Phase3Config {
    pub tag: ConfigTag,
    /// Whether the proof's relabeling was applied to reach `tag`.
    pub relabeled: bool,
    pub u: Vertex,
    pub v: [Vertex; 3],
    pub w: [Vertex; 3],
    pub x: [Option<Vertex>; 3],
    pub y: Option<Vertex>,
    pub y2: Option<Vertex>,
    pub z: Option<Vertex>,
    pub a: Option<Vertex>,
}

impl Phase3Config {
    /// Re-checks the adjacencies that define the tag.
    pub fn is_valid(&self, g: &Graph, white: &[bool]) -> bool {
        let adj = |a: Vertex, b: Vertex| g.is_adjacent(a, b);
        let [v1, v2, v3] = self.v;
        let [w1, w2, w3] = self.w;
        let base = white[self.u]
            && self.w.iter().all(|&w| white[w])
            && adj(self.u, v1)
            && adj(self.u, v2)
            && adj(self.u, v3)
            && adj(v1, w1)
            && adj(v2, w2)
            && adj(v3, w3);
        let (Some(x1), Some(x2)) = (self.x[0], self.x[1]) else { return false };
        if !base || x1 == x2 || !adj(x1, w1) || !adj(x2, w2) {
            return false;
        }
        match self.tag {
            ConfigTag::BothAdjW3 => adj(x1, w3) && adj(x2, w3),
            ConfigTag::AEqualsU | ConfigTag::AEqualsW3 => {
                let (Some(y), Some(z), Some(a)) = (self.y, self.z, self.a) else { return false };
                let want = if self.tag == ConfigTag::AEqualsU { self.u } else { w3 };
                adj(x1, w3)
                    && !adj(x2, w3)
                    && white[y]
                    && adj(x2, y)
                    && adj(y, z)
                    && a == want
                    && adj(z, a)
            }
            ConfigTag::DistinctY => {
                let (Some(y), Some(y2)) = (self.y, self.y2) else { return false };
                !adj(x1, w3)
                    && !adj(x2, w3)
                    && y != y2
                    && adj(x1, y)
                    && adj(x2, y2)
                    && [y, y2].iter().all(|&y| white[y] && y != self.u && !self.w.contains(&y))
            }
            ConfigTag::SharedY => {
                let (Some(y), Some(x3)) = (self.y, self.x[2]) else { return false };
                !adj(x1, w3) && !adj(x2, w3) && adj(x1, y) && adj(x2, y) && adj(w3, x3) && adj(x3, y)
            }
        }
    }
}

fn other_white(g: &Graph, white: &[bool], of: Vertex, not: Vertex) -> Option<Vertex> {
    g.neighbors(of).iter().copied().find(|&x| x != not && white[x])
}

/// First configuration found scanning `u` by index, then ordered triples of
/// its neighbors, then `x1`, `x2`; `None` if no labeling fits any case.
pub fn find_phase3_configuration(g: &Graph, white: &[bool]) -> Option<Phase3Config> {
    for u in g.vertices() {
        if !white[u] || g.degree(u) < 3 {
            continue;
        }
        let nu = g.neighbors(u);
        for &v1 in nu {
            for &v2 in nu {
                for &v3 in nu {
                    if v1 == v2 || v2 == v3 || v1 == v3 {
                        continue;
                    }
                    if let Some(c) = classify(g, white, u, [v1, v2, v3]) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

fn classify(g: &Graph, white: &[bool], u: Vertex, v: [Vertex; 3]) -> Option<Phase3Config> {
    let w1 = other_white(g, white, v[0], u)?;
    let w2 = other_white(g, white, v[1], u)?;
    let w3 = other_white(g, white, v[2], u)?;
    if w1 == w2 || w2 == w3 || w1 == w3 {
        return None;
    }
    let w = [w1, w2, w3];
    let far = |x: Vertex| x != u && !g.is_adjacent(x, u);
    for &x1 in g.neighbors(w1) {
        if x1 == v[0] || !far(x1) {
            continue;
        }
        for &x2 in g.neighbors(w2) {
            if x2 == v[1] || x2 == x1 || !far(x2) {
                continue;
            }
            if let Some(c) = case_split(g, white, u, v, w, x1, x2) {
                return Some(c);
            }
        }
    }
    None
}

fn case_split(
    g: &Graph,
    white: &[bool],
    u: Vertex,
    v: [Vertex; 3],
    w: [Vertex; 3],
    x1: Vertex,
    x2: Vertex,
) -> Option<Phase3Config> {
    let [v1, v2, v3] = v;
    let [w1, w2, w3] = w;
    let adj = |a: Vertex, b: Vertex| g.is_adjacent(a, b);
    let base = |tag, relabeled, v, w, x, y, y2, z, a| Phase3Config {
        tag,
        relabeled,
        u,
        v,
        w,
        x,
        y,
        y2,
        z,
        a,
    };
    match (adj(x1, w3), adj(x2, w3)) {
        (true, true) => Some(base(
            ConfigTag::BothAdjW3,
            false,
            v,
            w,
            [Some(x1), Some(x2), None],
            None,
            None,
            None,
            None,
        )),
        (true, false) => {
            let y = other_white(g, white, x2, w2)?;
            let swapped_v = [v3, v2, v1];
            let swapped_w = [w3, w2, w1];
            if y == w1 {
                return Some(base(
                    ConfigTag::BothAdjW3,
                    true,
                    swapped_v,
                    swapped_w,
                    [Some(x1), Some(x2), None],
                    None,
                    None,
                    None,
                    None,
                ));
            }
            if y == u || w.contains(&y) {
                return None;
            }
            let banned = [v1, v2, v3, x1, x2];
            let z = g.neighbors(y).iter().copied().find(|z| !banned.contains(z))?;
            let a = other_white(g, white, z, y)?;
            let x = [Some(x1), Some(x2), None];
            if a == u {
                Some(base(ConfigTag::AEqualsU, false, v, w, x, Some(y), None, Some(z), Some(a)))
            } else if a == w3 {
                Some(base(ConfigTag::AEqualsW3, false, v, w, x, Some(y), None, Some(z), Some(a)))
            } else if a == w1 {
                Some(base(
                    ConfigTag::AEqualsW3,
                    true,
                    swapped_v,
                    swapped_w,
                    x,
                    Some(y),
                    None,
                    Some(z),
                    Some(a),
                ))
            } else {
                None
            }
        }
        // The mirror image is reached by the enumeration with v1 and v2 swapped.
        (false, true) => None,
        (false, false) => {
            let y1 = other_white(g, white, x1, w1)?;
            let y2 = other_white(g, white, x2, w2)?;
            // The two-move plan gains a fresh white vertex at each x; a y that
            // is already u or a w gives nothing new.
            let fresh = |y: Vertex| y != u && !w.contains(&y);
            if y1 != y2 && !(fresh(y1) && fresh(y2)) {
                return None;
            }
            if y1 != y2 {
                return Some(base(
                    ConfigTag::DistinctY,
                    false,
                    v,
                    w,
                    [Some(x1), Some(x2), None],
                    Some(y1),
                    Some(y2),
                    None,
                    None,
                ));
            }
            let y = y1;
            let x3 = g.neighbors(w3).iter().copied().find(|&x| x != v3 && x != x1 && x != x2)?;
            let a = other_white(g, white, x3, w3)?;
            if a == y {
                Some(base(
                    ConfigTag::SharedY,
                    false,
                    v,
                    w,
                    [Some(x1), Some(x2), Some(x3)],
                    Some(y),
                    None,
                    None,
                    None,
                ))
            } else if a == w1 {
                // x1 becomes z, x3 becomes x1, and (v1, w1) swap with (v3, w3).
                Some(base(
                    ConfigTag::AEqualsW3,
                    true,
                    [v3, v2, v1],
                    [w3, w2, w1],
                    [Some(x3), Some(x2), None],
                    Some(y),
                    None,
                    Some(x1),
                    Some(w1),
                ))
            } else if a == w2 {
                Some(base(
                    ConfigTag::AEqualsW3,
                    true,
                    [v3, v1, v2],
                    [w3, w1, w2],
                    [Some(x3), Some(x1), None],
                    Some(y),
                    None,
                    Some(x2),
                    Some(w2),
                ))
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    /// u=0; v=1,2,3; w=4,5,6; x=7,8,9; y=10.
    fn shared_y_graph() -> Graph {
        Graph::from_edges(
            11,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (2, 5),
                (3, 6),
                (4, 7),
                (5, 8),
                (6, 9),
                (7, 10),
                (8, 10),
                (9, 10),
            ],
        )
        .unwrap()
    }

    #[test]
    fn shared_y_case() {
        let g = shared_y_graph();
        let white = vec![true; 11];
        let c = find_phase3_configuration(&g, &white).unwrap();
        assert_eq!(c.tag, ConfigTag::SharedY);
        assert_eq!((c.u, c.v, c.y), (0, [1, 2, 3], Some(10)));
        assert_eq!(c.x, [Some(7), Some(8), Some(9)]);
        assert!(c.is_valid(&g, &white));
    }

    #[test]
    fn long_cycle_has_none() {
        let g = generate(&GeneratorSpec::Cycle(10)).unwrap();
        assert!(find_phase3_configuration(&g, &[true; 10]).is_none());
    }

    #[test]
    fn both_adjacent_case() {
        // u=0; v=1,2,3; w=4,5,6; x1=7 ~ w1,w3; x2=8 ~ w2,w3.
        let g = Graph::from_edges(
            9,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (7, 6), (8, 6)],
        )
        .unwrap();
        let white = vec![true; 9];
        let c = find_phase3_configuration(&g, &white).unwrap();
        assert_eq!(c.tag, ConfigTag::BothAdjW3);
        assert!(c.is_valid(&g, &white));
    }
}
