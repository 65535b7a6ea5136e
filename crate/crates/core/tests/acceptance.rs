//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{floor_five_sevenths, floor_three_quarters, least_walk, naive_value, separable_by_subsets, Shape};
use tdgame_core::detect::{find_walk, max_white_separable, WalkKind};
use tdgame_core::game::{Arena, Board, Player};
use tdgame_core::graph::{generate, open_neighborhood_hypergraph, GeneratorSpec, Graph, Hypergraph};
use tdgame_core::harness::{is_valid_board, nonisomorphic_graphs};
use tdgame_core::solver::{gamma_equals_tau_on_onh, gamma_tg, verify_continuation_principle, Solver, SolverConfig};
use tdgame_core::strategy::{
    play_game, reduce_duplicate_leaves, verify_trace, GameTrace, PlayConfig, StallerKind, StrategyKind,
};

/// Exact criteria: no tolerance anywhere. Property criteria run on these
/// fixed sample sizes and seeds.
const RANDOM_GAMES_PER_STRATEGY: u64 = 1000;
const MAX_RANDOM_N: usize = 40;
const OPTIMAL_ADVERSARY_MAX_N: usize = 16;
const SEPARABLE_SAMPLES: usize = 500;
const WALK_SAMPLES: usize = 500;
const CONTINUATION_SAMPLES: usize = 1000;

/// Checks of proof structure rather than listed inequalities.
const DIAGNOSTIC_CLAIMS: [&str; 1] = ["sequence structure present"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 known game values", paper_values),
        ("2 exhaustive bound check, 2 <= n <= 7", exhaustive_bounds),
        ("3 strategies vs optimal Staller, n <= 7", strategy_soundness),
        ("4 per-phase claims on random games", phase_claims),
        ("5 oracle equivalences", oracle_equivalences),
        ("6 transversal correspondence", transversal),
        ("7 duplicate-leaf reduction keeps the value", reduction),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        let word = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {word} ({}; {:.1?})", o.detail, start.elapsed());
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn board(spec: &str) -> Graph {
    generate(&spec.parse().unwrap()).unwrap()
}

fn paper_values() -> Outcome {
    let mut cases: Vec<(String, usize)> = vec![
        ("cycle 7".into(), 5),
        ("2*cycle 7".into(), 9),
        ("3*cycle 7".into(), 13),
        ("path 4".into(), 3),
        ("2*path 4".into(), 6),
    ];
    for k in 1..=4 {
        cases.push((format!("{k}*cycle 3"), 2 * k));
    }
    let wrong: Vec<String> = cases
        .iter()
        .filter_map(|(spec, want)| {
            let got = gamma_tg(&board(spec)).unwrap();
            (got != *want).then(|| format!("{spec}: {got} != {want}"))
        })
        .collect();
    Outcome {
        pass: wrong.is_empty(),
        detail: if wrong.is_empty() { format!("{} values exact", cases.len()) } else { wrong.join(", ") },
    }
}

fn no_isolated_edges(g: &Graph) -> bool {
    is_valid_board(g) && g.isolated_edges().is_empty()
}

fn exhaustive_bounds() -> Outcome {
    // Counts of all graphs up to isomorphism, a check that the enumeration
    // is complete before any bound is trusted.
    let known = [1, 2, 4, 11, 34, 156, 1044];
    let mut problems = Vec::new();
    let mut checked = 0;
    let mut tight = 0;
    for n in 2..=7 {
        let all = nonisomorphic_graphs(n);
        if all.len() != known[n - 1] {
            problems.push(format!("n = {n}: {} classes, expected {}", all.len(), known[n - 1]));
        }
        let boards: Vec<Graph> = all.into_iter().filter(no_isolated_edges).collect();
        let values: Vec<usize> = boards.par_iter().map(|g| gamma_tg(g).unwrap()).collect();
        for (g, &v) in boards.iter().zip(&values) {
            checked += 1;
            if v > floor_three_quarters(n) {
                problems.push(format!("{g:?}: {v} > 3n/4"));
            }
            if v == floor_three_quarters(n) {
                tight += 1;
            }
            if g.min_degree() >= 2 && v > floor_five_sevenths(n) {
                problems.push(format!("{g:?}: {v} > (5n+5)/7"));
            }
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{checked} boards, {tight} meet 3n/4 exactly")
        } else {
            problems.join("; ")
        },
    }
}

fn strategy_soundness() -> Outcome {
    let mut problems = Vec::new();
    let mut games = 0;
    for (kind, keep) in [
        (StrategyKind::General, no_isolated_edges as fn(&Graph) -> bool),
        (StrategyKind::MinDeg2, |g: &Graph| is_valid_board(g) && g.min_degree() >= 2),
    ] {
        let boards: Vec<Graph> = (2..=7).flat_map(nonisomorphic_graphs).filter(|g| keep(g)).collect();
        games += boards.len();
        let results: Vec<Option<String>> = boards
            .par_iter()
            .map(|g| {
                let bound = match kind {
                    StrategyKind::General => floor_three_quarters(g.n()),
                    StrategyKind::MinDeg2 => floor_five_sevenths(g.n()),
                };
                match play_game(g, PlayConfig { strategy: kind, adversary: StallerKind::Optimal }) {
                    Err(e) => Some(format!("{kind} on {g:?}: {e}")),
                    Ok(t) if t.total_moves() > bound => Some(format!("{kind} on {g:?}: {} > {bound}", t.total_moves())),
                    Ok(t) => verify_trace(&t).err().map(|e| format!("{kind} on {g:?}: replay {e}")),
                }
            })
            .collect();
        problems.extend(results.into_iter().flatten());
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() { format!("{games} games within bound, no rule violations") } else { problems.join("; ") },
    }
}

fn random_board(kind: StrategyKind, i: u64) -> GeneratorSpec {
    let n = 5 + (i as usize % (MAX_RANDOM_N - 4));
    let edge_prob = 0.06 + 0.04 * (i % 6) as f64;
    match (kind, i % 3) {
        (StrategyKind::MinDeg2, _) | (StrategyKind::General, 2) => GeneratorSpec::RandomMinDeg2 { n, edge_prob, seed: i },
        (StrategyKind::General, 0) => GeneratorSpec::RandomTree { n, seed: i },
        (StrategyKind::General, _) => GeneratorSpec::RandomDecorated {
            core: 3 + i as usize % 18,
            pendants: (i / 3) as usize % 5,
            spiders: (i / 5) as usize % 2,
            edge_prob,
            seed: i,
        },
    }
}

fn random_adversary(i: u64, n: usize) -> StallerKind {
    match (i / 3) % 3 {
        0 => StallerKind::Greedy,
        1 if n <= OPTIMAL_ADVERSARY_MAX_N => StallerKind::Optimal,
        _ => StallerKind::Random { seed: i.wrapping_mul(0x9e37_79b9_7f4a_7c15) },
    }
}

fn phase_claims() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for kind in [StrategyKind::MinDeg2, StrategyKind::General] {
        let traces: Vec<(u64, Result<GameTrace, String>)> = (0..RANDOM_GAMES_PER_STRATEGY)
            .into_par_iter()
            .map(|i| {
                let g = generate(&random_board(kind, i)).unwrap();
                let adversary = random_adversary(i, g.n());
                (i, play_game(&g, PlayConfig { strategy: kind, adversary }).map_err(|e| e.to_string()))
            })
            .collect();
        let (mut best_effort, mut warnings, mut diagnostics, mut final_checks, mut not_applicable) = (0, 0, 0, 0, 0);
        for (i, t) in traces {
            let t = match t {
                Ok(t) => t,
                Err(e) => {
                    failures.push(format!("{kind} game {i}: {e}"));
                    continue;
                }
            };
            if let Err(e) = verify_trace(&t) {
                failures.push(format!("{kind} game {i}: replay {e}"));
            }
            if !t.verdicts_pass() {
                failures.push(format!("{kind} game {i} on {}: bound verdict failed", t.graph6));
            }
            if t.verdicts.iter().all(|v| !v.applicable) {
                not_applicable += 1;
            }
            final_checks += t.final_checks.iter().filter(|c| !c.holds).count().min(1);
            if t.structural_warning {
                best_effort += 1;
                warnings += t.claims.iter().filter(|c| !c.holds).count();
                continue;
            }
            for c in t.claims.iter().filter(|c| !c.holds) {
                if DIAGNOSTIC_CLAIMS.contains(&c.name.as_str()) {
                    diagnostics += 1;
                } else {
                    failures.push(format!("{kind} game {i} on {}: phase {} {} ({})", t.graph6, c.phase, c.name, c.detail));
                }
            }
        }
        notes.push(format!(
            "{kind}: {best_effort} best-effort boards with {warnings} warnings, {not_applicable} outside the bound's hypotheses, {diagnostics} diagnostic failures, {final_checks} games failing a whole-game check"
        ));
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} games; {}", 2 * RANDOM_GAMES_PER_STRATEGY, notes.join("; "))
        } else {
            format!("{} failures: {}; {}", failures.len(), failures.join("; "), notes.join("; "))
        },
    }
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(3..=max_n);
    let edge_prob = rng.gen_range(0.15..0.6);
    generate(&GeneratorSpec::Random { n, edge_prob, seed: rng.gen() }).unwrap()
}

fn oracle_equivalences() -> Outcome {
    let mut problems = Vec::new();

    let boards: Vec<Graph> = (2..=6).flat_map(nonisomorphic_graphs).filter(is_valid_board).collect();
    for g in &boards {
        let arena = Arena::new(Board::Graph(g.clone())).unwrap();
        let mut solver = Solver::new(&arena, SolverConfig::default()).unwrap();
        for (first, dom) in [(Player::Dominator, true), (Player::Staller, false)] {
            if solver.value(0, first).unwrap() != naive_value(g, 0, dom) {
                problems.push(format!("solver vs plain minimax on {g:?}"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..SEPARABLE_SAMPLES {
        let g = random_graph(&mut rng, 10);
        let white: Vec<bool> = (0..g.n()).map(|_| rng.gen_bool(0.7)).collect();
        let eligible = vec![true; g.n()];
        let cert = max_white_separable(&g, &white, &eligible);
        if !cert.is_valid(&g, Some(&white), Some(&eligible)) || cert.len() != separable_by_subsets(&g, &white, &eligible) {
            problems.push(format!("separable set on {g:?}"));
        }
    }

    let mut nones = 0;
    for _ in 0..WALK_SAMPLES {
        let g = random_graph(&mut rng, 10);
        let white: Vec<bool> = (0..g.n()).map(|_| rng.gen_bool(0.5)).collect();
        for (k, kind, shape) in [
            (2, WalkKind::Walk, Shape::Walk),
            (3, WalkKind::Walk, Shape::Walk),
            (2, WalkKind::Circuit, Shape::Circuit),
            (3, WalkKind::Circuit, Shape::Circuit),
            (4, WalkKind::Circuit, Shape::Circuit),
            (2, WalkKind::Terminal, Shape::Terminal),
        ] {
            let got = find_walk(&g, &white, k, kind).map(|w| (w.w, w.v));
            let want = least_walk(&g, &white, k, shape);
            if got.is_none() {
                nones += 1;
            }
            if got != want {
                problems.push(format!("{k}-{kind:?} on {g:?}"));
            }
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "solver on {} boards, {SEPARABLE_SAMPLES} separable samples, {nones} empty walk results confirmed",
                boards.len()
            )
        } else {
            problems.join("; ")
        },
    }
}

fn transversal() -> Outcome {
    let mut problems = Vec::new();
    let boards: Vec<Graph> = (2..=6).flat_map(nonisomorphic_graphs).filter(is_valid_board).collect();
    for g in &boards {
        if !gamma_equals_tau_on_onh(g).unwrap() {
            problems.push(format!("{g:?}"));
        }
    }

    // Half the samples on neighborhood hypergraphs, half on random ones.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut samples = 0;
    let mut violations = 0;
    while samples < CONTINUATION_SAMPLES {
        let h = if samples % 2 == 0 {
            let g = random_graph(&mut rng, 12);
            if !is_valid_board(&g) {
                continue;
            }
            open_neighborhood_hypergraph(&g).unwrap()
        } else {
            let n = rng.gen_range(3..=12);
            let edges: Vec<Vec<usize>> = (0..rng.gen_range(1..=2 * n))
                .map(|_| {
                    let mut e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
                    if e.is_empty() {
                        e.push(rng.gen_range(0..n));
                    }
                    e
                })
                .collect();
            Hypergraph::new(n, edges).unwrap()
        };
        let arena = Arena::new(Board::Hypergraph(h)).unwrap();
        let report = verify_continuation_principle(&arena, 10, rng.gen()).unwrap();
        samples += report.samples;
        violations += report.violations.len();
    }
    if violations > 0 {
        problems.push(format!("{violations} continuation violations"));
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} boards agree, {samples} sampled (H, A) with tau <= tau' + 1", boards.len())
        } else {
            problems.join("; ")
        },
    }
}

fn reduction() -> Outcome {
    let mut problems = Vec::new();
    let (mut checked, mut reduced) = (0, 0);
    for n in 2..=8 {
        for g in nonisomorphic_graphs(n).into_iter().filter(|g| g.is_tree()) {
            let (r, _) = reduce_duplicate_leaves(&g);
            if !r.isolated_edges().is_empty() {
                continue;
            }
            checked += 1;
            if r.n() < g.n() {
                reduced += 1;
            }
            let (a, b) = (gamma_tg(&g).unwrap(), gamma_tg(&r).unwrap());
            if a != b {
                problems.push(format!("{g:?}: {a} vs reduced {b}"));
            }
        }
    }
    Outcome {
        pass: problems.is_empty() && reduced > 0,
        detail: if problems.is_empty() {
            format!("{checked} trees, {reduced} actually reduced")
        } else {
            problems.join("; ")
        },
    }
}
