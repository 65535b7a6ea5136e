use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Board generators. Random kinds are deterministic in their seed.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Path(usize),
    Cycle(usize),
    /// `K_{1,k}` with center 0.
    Star(usize),
    Complete(usize),
    DisjointUnion(Vec<GeneratorSpec>),
    Random { n: usize, edge_prob: f64, seed: u64 },
    RandomMinDeg2 { n: usize, edge_prob: f64, seed: u64 },
    /// Uniform labeled tree from a random Prüfer sequence.
    RandomTree { n: usize, seed: u64 },
    /// A random minimum-degree-2 core on `core` vertices with `pendants`
    /// pendant paths of length two hung off core vertices and `spiders`
    /// corona-of-star components (a parent adjacent to two or three other
    /// parents, each with one leaf).
    RandomDecorated { core: usize, pendants: usize, spiders: usize, edge_prob: f64, seed: u64 },
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    use GeneratorSpec::*;
    match *spec {
        Path(n) => {
            need(n >= 1, "path needs n >= 1")?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges)
        }
        Cycle(n) => {
            need(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        Star(k) => {
            need(k >= 1, "star needs k >= 1")?;
            let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
            Graph::from_edges(k + 1, &edges)
        }
        Complete(n) => {
            need(n >= 1, "complete graph needs n >= 1")?;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        DisjointUnion(ref parts) => {
            let parts = parts.iter().map(generate).collect::<Result<Vec<_>>>()?;
            Ok(Graph::disjoint_union(&parts))
        }
        Random { n, edge_prob, seed } => {
            check_random(n, edge_prob)?;
            Ok(gnp(n, edge_prob, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        RandomMinDeg2 { n, edge_prob, seed } => {
            check_random(n, edge_prob)?;
            need(n >= 3, "minimum degree 2 needs n >= 3")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = gnp(n, edge_prob, &mut rng);
            raise_min_degree(&mut g, 2, &mut rng);
            Ok(g)
        }
        RandomTree { n, seed } => {
            need(n >= 2, "tree needs n >= 2")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
            Ok(prufer_tree(n, &code))
        }
        RandomDecorated { core, pendants, spiders, edge_prob, seed } => {
            check_random(core, edge_prob)?;
            need(core >= 3, "decorated graph needs a core of at least 3 vertices")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = gnp(core, edge_prob, &mut rng);
            raise_min_degree(&mut g, 2, &mut rng);
            let mut edges = g.edges();
            let mut n = core;
            for _ in 0..pendants {
                let z = rng.gen_range(0..core);
                edges.push((z, n));
                edges.push((n, n + 1));
                n += 2;
            }
            for _ in 0..spiders {
                let arms = rng.gen_range(2..=3);
                let center = n;
                edges.push((center, center + 1));
                n += 2;
                for _ in 0..arms {
                    edges.push((center, n));
                    edges.push((n, n + 1));
                    n += 2;
                }
            }
            Graph::from_edges(n, &edges)
        }
    }
}

fn need(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Generate(msg.to_string()))
    }
}

fn check_random(n: usize, p: f64) -> Result<()> {
    need(n >= 1, "random graph needs n >= 1")?;
    need((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]")
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid endpoints");
            }
        }
    }
    g
}

/// Adds random edges at low-degree vertices until every degree is at least `k`.
fn raise_min_degree(g: &mut Graph, k: usize, rng: &mut ChaCha8Rng) {
    for v in 0..g.n() {
        while g.degree(v) < k {
            let mut options: Vec<usize> =
                (0..g.n()).filter(|&w| w != v && !g.is_adjacent(v, w)).collect();
            // Prefer partners that also need degree.
            let low: Vec<usize> = options.iter().copied().filter(|&w| g.degree(w) < k).collect();
            if !low.is_empty() {
                options = low;
            }
            let w = *options.choose(rng).expect("n >= k + 1 leaves a partner");
            g.add_edge(v, w).expect("valid endpoints");
        }
    }
}

/// Decodes a Prüfer sequence of length `n - 2` into a labeled tree.
pub(crate) fn prufer_tree(n: usize, code: &[usize]) -> Graph {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut g = Graph::empty(n);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        g.add_edge(leaf, c).expect("valid endpoints");
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).expect("two vertices remain");
    g
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        match self {
            Path(n) => write!(f, "path {n}"),
            Cycle(n) => write!(f, "cycle {n}"),
            Star(k) => write!(f, "star {k}"),
            Complete(n) => write!(f, "complete {n}"),
            DisjointUnion(parts) => {
                let parts: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Random { n, edge_prob, seed } => write!(f, "random({n}, {edge_prob}, {seed})"),
            RandomMinDeg2 { n, edge_prob, seed } => {
                write!(f, "random_min_deg2({n}, {edge_prob}, {seed})")
            }
            RandomTree { n, seed } => write!(f, "random_tree({n}, {seed})"),
            RandomDecorated { core, pendants, spiders, edge_prob, seed } => {
                write!(f, "random_decorated({core}, {pendants}, {spiders}, {edge_prob}, {seed})")
            }
        }
    }
}

/// Accepts `kind a b ...` or `kind(a, b, ...)`; `+` joins disjoint parts and
/// `k*spec` repeats a part, e.g. `3*cycle 7 + path 4`.
impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('+').map(str::trim).collect();
        if parts.len() > 1 || parts[0].contains('*') {
            let mut out = Vec::new();
            for p in parts {
                let (count, body) = match p.split_once('*') {
                    Some((k, body)) => (
                        k.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Generate(format!("bad repeat count in {p:?}")))?,
                        body.trim(),
                    ),
                    None => (1, p),
                };
                let single: GeneratorSpec = parse_single(body)?;
                out.extend(std::iter::repeat_n(single, count));
            }
            return Ok(GeneratorSpec::DisjointUnion(out));
        }
        parse_single(parts[0])
    }
}

fn parse_single(s: &str) -> Result<GeneratorSpec> {
    let bad = || Error::Generate(format!("unrecognized generator {s:?}"));
    let cleaned = s.replace(['(', ')', ','], " ");
    let mut it = cleaned.split_whitespace();
    let kind = it.next().ok_or_else(bad)?.to_ascii_lowercase();
    let args: Vec<&str> = it.collect();
    let int = |i: usize| -> Result<usize> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad) };
    let u64_at = |i: usize| -> Result<u64> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad) };
    let prob = |i: usize| -> Result<f64> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad) };
    let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(bad()) };
    use GeneratorSpec::*;
    Ok(match kind.as_str() {
        "path" => {
            arity(1)?;
            Path(int(0)?)
        }
        "cycle" => {
            arity(1)?;
            Cycle(int(0)?)
        }
        "star" => {
            arity(1)?;
            Star(int(0)?)
        }
        "complete" => {
            arity(1)?;
            Complete(int(0)?)
        }
        "random" => {
            arity(3)?;
            Random { n: int(0)?, edge_prob: prob(1)?, seed: u64_at(2)? }
        }
        "random_min_deg2" => {
            arity(3)?;
            RandomMinDeg2 { n: int(0)?, edge_prob: prob(1)?, seed: u64_at(2)? }
        }
        "random_tree" => {
            arity(2)?;
            RandomTree { n: int(0)?, seed: u64_at(1)? }
        }
        "random_decorated" => {
            arity(5)?;
            RandomDecorated {
                core: int(0)?,
                pendants: int(1)?,
                spiders: int(2)?,
                edge_prob: prob(3)?,
                seed: u64_at(4)?,
            }
        }
        _ => return Err(bad()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph6;

    #[test]
    fn cycle_seven_is_two_regular() {
        let c7 = generate(&GeneratorSpec::Cycle(7)).unwrap();
        assert_eq!(c7.n(), 7);
        assert!(c7.vertices().all(|v| c7.degree(v) == 2));
    }

    #[test]
    fn union_of_two_cycles() {
        let g = generate(&"2*cycle 7".parse().unwrap()).unwrap();
        assert_eq!(g.n(), 14);
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.components()[1][0], 7);
    }

    #[test]
    fn path_four_matches_graph6() {
        let p4 = generate(&GeneratorSpec::Path(4)).unwrap();
        assert_eq!(p4.adjacency_key(), parse_graph6("Ch").unwrap().adjacency_key());
    }

    #[test]
    fn random_is_deterministic() {
        let spec = GeneratorSpec::RandomMinDeg2 { n: 30, edge_prob: 0.15, seed: 7 };
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert!(a.min_degree() >= 2);
    }

    #[test]
    fn unsatisfiable_requests_error() {
        assert!(generate(&GeneratorSpec::RandomMinDeg2 { n: 2, edge_prob: 0.5, seed: 1 }).is_err());
        assert!(generate(&GeneratorSpec::Random { n: 4, edge_prob: 1.5, seed: 1 }).is_err());
        assert!(generate(&GeneratorSpec::Cycle(2)).is_err());
    }

    #[test]
    fn spec_strings_parse() {
        assert_eq!(
            "random_min_deg2(30, 0.15, 7)".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::RandomMinDeg2 { n: 30, edge_prob: 0.15, seed: 7 }
        );
        assert_eq!("cycle 7".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Cycle(7));
        assert!("hexagon 3".parse::<GeneratorSpec>().is_err());
        let spec: GeneratorSpec = "path 4 + cycle 3".parse().unwrap();
        assert_eq!(spec.to_string().parse::<GeneratorSpec>().unwrap(), spec);
    }

    #[test]
    fn trees_and_decorations() {
        for seed in 0..20 {
            let t = generate(&GeneratorSpec::RandomTree { n: 9, seed }).unwrap();
            assert!(t.is_tree());
        }
        let spec = GeneratorSpec::RandomDecorated {
            core: 8,
            pendants: 3,
            spiders: 1,
            edge_prob: 0.3,
            seed: 3,
        };
        let g = generate(&spec).unwrap();
        assert!(g.isolated_vertices().is_empty());
        assert!(g.isolated_edges().is_empty());
    }
}
