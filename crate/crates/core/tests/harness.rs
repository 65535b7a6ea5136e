use std::fs;

use tdgame_core::graph::{encode_graph6, parse_graph6, Graph, GeneratorSpec};
use tdgame_core::harness::{
    canonical_form, emit_trace, exhaustive_small_n, labeled_graphs, nonisomorphic_graphs, run_corpus,
    CorpusConfig, CorpusSource, ExhaustiveMode, Outcome,
};
use tdgame_core::strategy::{play_game, GameTrace, PlayConfig, StallerKind, StrategyKind};

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tdgame-harness-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn seven_cycle_corpus_passes() {
    let source = CorpusSource::Generator("cycle 7".parse().unwrap());
    let config = CorpusConfig::new(StrategyKind::MinDeg2, vec![StallerKind::Optimal]);
    let report = run_corpus(&source, &config).unwrap();
    assert!(report.pass);
    assert_eq!(report.records.len(), 1);
    assert_eq!(report.records[0].moves, 5);
    assert_eq!(report.records[0].outcome, Outcome::Pass);
}

#[test]
fn connected_four_vertex_file_with_a_bad_line() {
    let connected: Vec<Graph> =
        nonisomorphic_graphs(4).into_iter().filter(|g| g.components().len() == 1).collect();
    assert_eq!(connected.len(), 6);
    let mut text: String = connected.iter().map(|g| encode_graph6(g) + "\n").collect();
    text.push_str("not~graph6\n");
    let path = tmp("n4.g6");
    fs::write(&path, text).unwrap();
    let mut config = CorpusConfig::new(StrategyKind::General, vec![StallerKind::Optimal]);
    config.solver_check = true;
    let report = run_corpus(&CorpusSource::Graph6File(path), &config).unwrap();
    assert!(report.pass, "{:?}", report.records);
    assert_eq!(report.malformed.len(), 1);
    assert!(report.malformed[0].starts_with("line 7"));
    for r in &report.records {
        assert!(r.moves <= 3, "{}", r.graph6);
        assert!(r.solver_value.unwrap() <= r.moves);
    }
}

#[test]
fn random_min_degree_two_board_many_games() {
    let source = CorpusSource::Generator("random_min_deg2(30, 0.15, 7)".parse().unwrap());
    let mut config = CorpusConfig::new(StrategyKind::MinDeg2, vec![StallerKind::Random { seed: 0 }]);
    config.games = 500;
    config.seed = 11;
    let report = run_corpus(&source, &config).unwrap();
    assert_eq!(report.records.len(), 500);
    assert!(report.pass);
    assert!(report.records.iter().all(|r| r.moves <= 22 && r.bound == Some(22)));
    let again = run_corpus(&source, &config).unwrap();
    assert_eq!(
        serde_json::to_string(&report).unwrap(),
        serde_json::to_string(&again).unwrap(),
        "reports are reproducible"
    );
}

#[test]
fn exhaustive_bound_check_to_five() {
    let report = exhaustive_small_n(5, ExhaustiveMode::BoundCheck).unwrap();
    assert!(report.pass);
    let five = report.sizes.iter().find(|s| s.n == 5).unwrap();
    assert!(five.max_value <= 3);
    let four = report.sizes.iter().find(|s| s.n == 4).unwrap();
    let p4 = canonical_form(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap());
    let witnesses: Vec<Vec<u16>> =
        four.tight_witnesses.iter().map(|w| canonical_form(&parse_graph6(w).unwrap())).collect();
    assert!(witnesses.contains(&p4), "{:?}", four.tight_witnesses);
}

#[test]
fn exhaustive_min_degree_two_at_three_is_the_triangle() {
    let report = exhaustive_small_n(3, ExhaustiveMode::StrategyVsSolver(StrategyKind::MinDeg2)).unwrap();
    let three = report.sizes.iter().find(|s| s.n == 3).unwrap();
    assert_eq!(three.graphs, 1);
    assert_eq!((three.max_value, three.bound), (2, Some(2)));
    assert!(report.pass);
}

#[test]
fn exhaustive_refuses_large_orders() {
    assert!(exhaustive_small_n(9, ExhaustiveMode::BoundCheck).is_err());
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
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

#[test]
fn class_count_matches_brute_force_relabeling() {
    // Independent of the refinement: least adjacency key over all n!
    // relabelings of every labeled graph.
    for n in 1..=5 {
        let perms = permutations(n);
        let forms: std::collections::BTreeSet<Vec<bool>> = labeled_graphs(n)
            .map(|g| perms.iter().map(|p| g.relabel(p).adjacency_key()).min().unwrap())
            .collect();
        assert_eq!(forms.len(), nonisomorphic_graphs(n).len(), "n = {n}");
    }
}

#[test]
fn emitted_trace_round_trips() {
    let g: Graph = tdgame_core::graph::generate(&GeneratorSpec::Cycle(7)).unwrap();
    let trace = play_game(&g, PlayConfig { strategy: StrategyKind::MinDeg2, adversary: StallerKind::Optimal }).unwrap();
    let path = tmp("c7.json");
    emit_trace(&trace, &path).unwrap();
    let back: GameTrace = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.total_moves(), 5);
    assert_eq!(back.phases[0].moves, 0);
    assert_eq!(back.final_counters, trace.final_counters);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["schema"], "tdgame-trace/1");
    assert!(value["ledger_log"][0]["counters"].is_object());
}

#[test]
fn best_effort_trace_is_flagged_in_json() {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
    let trace = play_game(&g, PlayConfig { strategy: StrategyKind::General, adversary: StallerKind::Greedy }).unwrap();
    let path = tmp("triangle-pendant.json");
    emit_trace(&trace, &path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["structural_warning"], true);
}
