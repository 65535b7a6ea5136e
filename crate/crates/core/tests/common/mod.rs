//! Independent oracles. Nothing here goes through the engine, the solver or
//! the detectors: each works from the adjacency relation alone.

#![allow(dead_code)]

use tdgame_core::graph::Graph;

/// Plain minimax without a cache. `selected` is a bitmask; a move is legal
/// when it totally dominates some vertex not yet dominated.
pub fn naive_value(g: &Graph, selected: u64, dominator_to_move: bool) -> usize {
    let n = g.n();
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &x| m | 1 << x)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    fn rec(nbr: &[u64], all: u64, selected: u64, dominated: u64, dom: bool) -> usize {
        if dominated == all {
            return 0;
        }
        let mut best: Option<usize> = None;
        for (v, &nv) in nbr.iter().enumerate() {
            if selected >> v & 1 == 1 || nv & !dominated == 0 {
                continue;
            }
            let x = 1 + rec(nbr, all, selected | 1 << v, dominated | nv, !dom);
            best = Some(match best {
                None => x,
                Some(b) if dom => b.min(x),
                Some(b) => b.max(x),
            });
        }
        best.expect("an undominated vertex always has an unplayed neighbor")
    }
    let dominated = (0..n).filter(|&v| selected >> v & 1 == 1).fold(0, |m, v| m | nbr[v]);
    rec(&nbr, all, selected, dominated, dominator_to_move)
}

/// Largest `S` among `eligible` vertices admitting pairwise disjoint white
/// triples `B_v ⊆ N(v)`, by trying every subset.
pub fn separable_by_subsets(g: &Graph, white: &[bool], eligible: &[bool]) -> usize {
    let n = g.n();
    let white_nbrs: Vec<Vec<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().filter(|&x| white[x]).collect()).collect();
    fn fits(white_nbrs: &[Vec<usize>], members: &[usize], used: &mut u64) -> bool {
        let Some((&v, rest)) = members.split_first() else { return true };
        let xs = &white_nbrs[v];
        for a in 0..xs.len() {
            for b in a + 1..xs.len() {
                for c in b + 1..xs.len() {
                    let t = 1u64 << xs[a] | 1 << xs[b] | 1 << xs[c];
                    if *used & t == 0 {
                        *used |= t;
                        if fits(white_nbrs, rest, used) {
                            return true;
                        }
                        *used &= !t;
                    }
                }
            }
        }
        false
    }
    let mut best = 0;
    for subset in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
        if members.len() <= best || members.iter().any(|&v| !eligible[v]) {
            continue;
        }
        if fits(&white_nbrs, &members, &mut 0) {
            best = members.len();
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Walk,
    Circuit,
    Terminal,
}

/// Least `(w1, v1, ..., wk, vk)` in lexicographic order satisfying the walk
/// definition, found by trying every vertex at every position.
pub fn least_walk(g: &Graph, white: &[bool], k: usize, shape: Shape) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut seq: Vec<usize> = Vec::with_capacity(2 * k);
    fn ok_prefix(g: &Graph, white: &[bool], seq: &[usize]) -> bool {
        let i = seq.len() - 1;
        let x = seq[i];
        if i % 2 == 0 {
            // a w: white, new among the w, adjacent to the previous v
            white[x] && seq.iter().step_by(2).filter(|&&y| y == x).count() == 1 && (i == 0 || g.is_adjacent(seq[i - 1], x))
        } else {
            seq.iter().skip(1).step_by(2).filter(|&&y| y == x).count() == 1 && g.is_adjacent(seq[i - 1], x)
        }
    }
    fn closes(g: &Graph, white: &[bool], seq: &[usize], shape: Shape) -> bool {
        let last_v = seq[seq.len() - 1];
        match shape {
            Shape::Walk => true,
            Shape::Circuit => g.is_adjacent(last_v, seq[0]),
            Shape::Terminal => {
                let last_w = seq[seq.len() - 2];
                (0..g.n()).all(|x| !g.is_adjacent(last_v, x) || !white[x] || x == last_w)
            }
        }
    }
    fn rec(g: &Graph, white: &[bool], k: usize, shape: Shape, n: usize, seq: &mut Vec<usize>) -> bool {
        if seq.len() == 2 * k {
            return closes(g, white, seq, shape);
        }
        for x in 0..n {
            seq.push(x);
            if ok_prefix(g, white, seq) && rec(g, white, k, shape, n, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    if rec(g, white, k, shape, n, &mut seq) {
        let w = seq.iter().step_by(2).copied().collect();
        let v = seq.iter().skip(1).step_by(2).copied().collect();
        Some((w, v))
    } else {
        None
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn floor_three_quarters(n: usize) -> usize {
    3 * n / 4
}

pub fn floor_five_sevenths(n: usize) -> usize {
    (5 * n + 5) / 7
}
