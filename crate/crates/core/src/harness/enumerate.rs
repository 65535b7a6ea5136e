//! Small-graph enumeration. Raw enumeration walks every adjacency bitmask;
//! the deduplicated one grows graphs a vertex at a time and keeps one
//! representative per canonical form.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Largest order the enumerators accept.
pub const MAX_ENUM_N: usize = 10;

/// Every labeled graph on `n` vertices, in bitmask order over the pairs
/// `(i, j)`, `i < j`, ordered by `j` then `i`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "2^(n choose 2) labeled graphs is too many beyond n = 8");
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).expect("pairs are in range")
    })
}

/// One graph per isomorphism class on exactly `n` vertices, sorted by
/// canonical form.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_ENUM_N, "enumeration is limited to n <= {MAX_ENUM_N}");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen: BTreeMap<Vec<u16>, Graph> = BTreeMap::new();
        for h in &level {
            for mask in 0u32..1 << (k - 1) {
                let mut edges = h.edges();
                edges.extend((0..k - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, k - 1)));
                let g = Graph::from_edges(k, &edges).expect("in range");
                seen.entry(canonical_form(&g)).or_insert(g);
            }
        }
        level = seen.into_values().collect();
    }
    level
}

/// Canonical adjacency rows: the lexicographically least row sequence over
/// all vertex orders compatible with an invariant color refinement.
pub fn canonical_form(g: &Graph) -> Vec<u16> {
    let n = g.n();
    assert!(n <= 16, "canonical form packs rows into u16");
    let colors = refine(g);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(colors[v]).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best: Option<Vec<u16>> = None;
    let mut order = Vec::with_capacity(n);
    search(g, &cells, 0, &mut vec![false; n], &mut order, &mut best);
    best.unwrap_or_default()
}

/// Iterated degree refinement; colors are ranks of invariant signatures, so
/// isomorphic graphs get corresponding colorings.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        let classes = |c: &[usize]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn search(
    g: &Graph,
    cells: &[Vec<usize>],
    cell: usize,
    used: &mut Vec<bool>,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<u16>>,
) {
    if cell == cells.len() {
        let rows = rows_for(g, order);
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        search(g, cells, cell + 1, used, order, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search(g, cells, cell, used, order, best);
        order.pop();
        used[v] = false;
    }
}

fn rows_for(g: &Graph, order: &[usize]) -> Vec<u16> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u16, |row, &u| row | 1 << pos[u]))
        .collect()
}

/// The game is defined: no isolated vertex.
pub fn is_valid_board(g: &Graph) -> bool {
    g.n() > 0 && g.isolated_vertices().is_empty()
}
