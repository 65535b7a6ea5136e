use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Arena, Board, Player};
use crate::graph::{encode_graph6, generate, parse_graph6_lines, Graph, GeneratorSpec};
use crate::solver::{solve_with, SolverConfig};
use crate::strategy::{
    five_sevenths_bound, play_game, play_game_against, three_quarter_bound, verify_trace, GameTrace,
    OptimalStaller, PlayConfig, StallerKind, StrategyKind,
};

use super::enumerate::{is_valid_board, nonisomorphic_graphs};

#[derive(Clone, Debug)]
pub enum CorpusSource {
    Graph6File(PathBuf),
    Generator(GeneratorSpec),
    Graphs { id: String, graphs: Vec<Graph> },
}

impl CorpusSource {
    fn id(&self) -> String {
        match self {
            CorpusSource::Graph6File(p) => p.display().to_string(),
            CorpusSource::Generator(spec) => spec.to_string(),
            CorpusSource::Graphs { id, .. } => id.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub strategy: StrategyKind,
    pub adversaries: Vec<StallerKind>,
    /// Games per graph and random adversary; each repeat reseeds the random
    /// Staller. Deterministic adversaries are played once.
    pub games: usize,
    pub seed: u64,
    /// Solver cache cap for the optimal adversary and the cross-check.
    pub budget: Option<usize>,
    /// Cross-check each board against the exact value when within budget.
    pub solver_check: bool,
}

impl CorpusConfig {
    pub fn new(strategy: StrategyKind, adversaries: Vec<StallerKind>) -> Self {
        CorpusConfig { strategy, adversaries, games: 1, seed: 0, budget: None, solver_check: false }
    }

    fn solver_config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(b) = self.budget {
            c.max_keys = b;
        }
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeClass {
    /// Minimum degree at least two.
    MinDeg2,
    /// Has leaves but no isolated edge.
    Leaves,
    /// Has an isolated edge, so the 3n/4 bound does not apply.
    IsolatedEdge,
}

pub fn degree_class(g: &Graph) -> DegreeClass {
    if g.min_degree() >= 2 {
        DegreeClass::MinDeg2
    } else if g.isolated_edges().is_empty() {
        DegreeClass::Leaves
    } else {
        DegreeClass::IsolatedEdge
    }
}

/// The bound a strategy's proof guarantees on `g`, if its hypotheses hold.
pub fn strategy_bound(g: &Graph, kind: StrategyKind) -> Option<usize> {
    match kind {
        StrategyKind::MinDeg2 => (g.min_degree() >= 2).then(|| five_sevenths_bound(g.n())),
        StrategyKind::General => g.isolated_edges().is_empty().then(|| three_quarter_bound(g.n())),
    }
}

/// The tightest proven bound for the game value on `g`.
pub fn applicable_bound(g: &Graph) -> Option<usize> {
    let n = g.n();
    match degree_class(g) {
        DegreeClass::MinDeg2 => Some(three_quarter_bound(n).min(five_sevenths_bound(n))),
        DegreeClass::Leaves => Some(three_quarter_bound(n)),
        DegreeClass::IsolatedEdge => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// No bound applies; the game was played and recorded only.
    NotApplicable,
    /// The board is outside the strategy's preconditions or the game
    /// raised an error; see `error`.
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct GameRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub class: DegreeClass,
    /// `None` for exact-value records.
    pub strategy: Option<StrategyKind>,
    pub adversary: String,
    pub moves: usize,
    pub bound: Option<usize>,
    pub outcome: Outcome,
    pub tight: bool,
    pub warnings: Vec<String>,
    /// Phase claims that failed on a board where they should hold.
    pub claim_failures: Vec<String>,
    pub solver_value: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub graphs: usize,
    /// Largest value among boards some bound applies to.
    pub max_value: usize,
    pub bound: Option<usize>,
    pub tight_witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub corpus: String,
    pub records: Vec<GameRecord>,
    /// Malformed input lines, with their line numbers.
    pub malformed: Vec<String>,
    /// Per-order maxima, filled by exhaustive runs.
    pub sizes: Vec<SizeSummary>,
    pub pass: bool,
    pub failures: usize,
    pub claim_failures: usize,
    pub errors: usize,
}

impl VerificationReport {
    fn build(corpus: String, mut records: Vec<GameRecord>, malformed: Vec<String>, sizes: Vec<SizeSummary>) -> Self {
        records.sort_by(|a, b| (a.index, &a.adversary).cmp(&(b.index, &b.adversary)));
        let failures = records.iter().filter(|r| r.outcome == Outcome::Fail).count();
        let errors = records.iter().filter(|r| r.outcome == Outcome::Error).count();
        let claim_failures = records.iter().filter(|r| !r.claim_failures.is_empty()).count();
        VerificationReport {
            corpus,
            records,
            malformed,
            sizes,
            pass: failures == 0 && errors == 0,
            failures,
            claim_failures,
            errors,
        }
    }

    /// Exit status for the command line: 0 pass, 1 verdict failure or
    /// ledger rule violation.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn load(source: &CorpusSource) -> Result<(Vec<Graph>, Vec<String>)> {
    match source {
        CorpusSource::Graph6File(path) => {
            let text = fs::read_to_string(path)?;
            let mut graphs = Vec::new();
            let mut malformed = Vec::new();
            for (line, parsed) in parse_graph6_lines(&text) {
                match parsed {
                    Ok(g) => graphs.push(g),
                    Err(e) => malformed.push(format!("line {line}: {e}")),
                }
            }
            Ok((graphs, malformed))
        }
        CorpusSource::Generator(spec) => Ok((vec![generate(spec)?], Vec::new())),
        CorpusSource::Graphs { graphs, .. } => Ok((graphs.clone(), Vec::new())),
    }
}

/// Mixes the corpus seed, the graph index and the repeat into one seed.
fn game_seed(seed: u64, index: usize, repeat: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (repeat as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}

/// Plays the configured strategy on every board of the corpus against every
/// adversary. Games run in parallel; the report is sorted, so it depends
/// only on the corpus and the configuration.
pub fn run_corpus(source: &CorpusSource, config: &CorpusConfig) -> Result<VerificationReport> {
    let (graphs, malformed) = load(source)?;
    let mut jobs = Vec::new();
    for index in 0..graphs.len() {
        for &adv in &config.adversaries {
            match adv {
                StallerKind::Random { seed } => {
                    for r in 0..config.games.max(1) {
                        jobs.push((index, StallerKind::Random { seed: game_seed(config.seed ^ seed, index, r) }));
                    }
                }
                other => jobs.push((index, other)),
            }
        }
    }
    let values: Vec<Option<usize>> = if config.solver_check {
        graphs.par_iter().map(|g| exact_value(g, config.solver_config())).collect()
    } else {
        vec![None; graphs.len()]
    };
    let records: Vec<GameRecord> = jobs
        .into_par_iter()
        .map(|(index, adv)| play_record(index, &graphs[index], config, adv, values[index]))
        .collect();
    Ok(VerificationReport::build(source.id(), records, malformed, Vec::new()))
}

fn exact_value(g: &Graph, config: SolverConfig) -> Option<usize> {
    let arena = Arena::new(Board::Graph(g.clone())).ok()?;
    solve_with(&arena, &[], Player::Dominator, config).ok().map(|r| r.value)
}

fn play_record(
    index: usize,
    g: &Graph,
    config: &CorpusConfig,
    adversary: StallerKind,
    solver_value: Option<usize>,
) -> GameRecord {
    let mut record = GameRecord {
        index,
        graph6: encode_graph6(g),
        n: g.n(),
        class: degree_class(g),
        strategy: Some(config.strategy),
        adversary: adversary.to_string(),
        moves: 0,
        bound: strategy_bound(g, config.strategy),
        outcome: Outcome::Skipped,
        tight: false,
        warnings: Vec::new(),
        claim_failures: Vec::new(),
        solver_value,
        error: None,
    };
    if !is_valid_board(g) {
        record.error = Some("board has an isolated vertex".into());
        return record;
    }
    if config.strategy == StrategyKind::MinDeg2 && g.min_degree() < 2 {
        record.error = Some("min-deg-2 strategy needs minimum degree two".into());
        return record;
    }
    let trace = match play_with_budget(g, config, adversary) {
        Ok(t) => t,
        Err(e) => {
            record.outcome = if matches!(e, Error::BoardTooLarge { .. } | Error::BudgetExceeded { .. }) {
                Outcome::Skipped
            } else {
                Outcome::Error
            };
            record.error = Some(e.to_string());
            return record;
        }
    };
    record.moves = trace.total_moves();
    if record.class == DegreeClass::IsolatedEdge {
        record.warnings.push("isolated edge: excluded from the 3n/4 verdict".into());
    }
    if trace.structural_warning {
        record.warnings.push("best-effort".into());
    }
    record.claim_failures =
        trace.claim_failures().iter().map(|c| format!("phase {}: {} ({})", c.phase, c.name, c.detail)).collect();
    record.outcome = match record.bound {
        None => Outcome::NotApplicable,
        Some(b) if record.moves <= b => Outcome::Pass,
        Some(_) => Outcome::Fail,
    };
    record.tight = record.bound == Some(record.moves);
    if let (Some(v), Some(b)) = (solver_value, record.bound) {
        if v > b {
            record.outcome = Outcome::Fail;
            record.warnings.push(format!("exact value {v} exceeds the bound {b}"));
        }
    }
    record
}

fn play_with_budget(g: &Graph, config: &CorpusConfig, adversary: StallerKind) -> Result<GameTrace> {
    let trace = match (adversary, config.budget) {
        (StallerKind::Optimal, Some(_)) => {
            play_game_against(g, config.strategy, &mut OptimalStaller::new(config.solver_config()))?
        }
        _ => play_game(g, PlayConfig { strategy: config.strategy, adversary })?,
    };
    verify_trace(&trace)?;
    Ok(trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustiveMode {
    /// Exact value against the applicable bound.
    BoundCheck,
    /// The strategy against the optimal adversary, moves against the bound.
    StrategyVsSolver(StrategyKind),
}

/// Every board on `2..=max_n` vertices up to isomorphism with no isolated
/// vertex. `StrategyVsSolver` restricts to the strategy's boards: minimum
/// degree two for min-deg-2, no isolated edge for the general strategy.
pub fn exhaustive_small_n(max_n: usize, mode: ExhaustiveMode) -> Result<VerificationReport> {
    if max_n > 8 {
        return Err(Error::Generate(format!("exhaustive runs are limited to n <= 8, got {max_n}")));
    }
    let mut records = Vec::new();
    let mut sizes = Vec::new();
    let mut index = 0;
    for n in 2..=max_n {
        let boards: Vec<Graph> = nonisomorphic_graphs(n)
            .into_iter()
            .filter(is_valid_board)
            .filter(|g| match mode {
                ExhaustiveMode::BoundCheck => true,
                ExhaustiveMode::StrategyVsSolver(StrategyKind::MinDeg2) => g.min_degree() >= 2,
                ExhaustiveMode::StrategyVsSolver(StrategyKind::General) => g.isolated_edges().is_empty(),
            })
            .collect();
        let batch: Vec<GameRecord> = boards
            .par_iter()
            .enumerate()
            .map(|(i, g)| match mode {
                ExhaustiveMode::BoundCheck => bound_record(index + i, g),
                ExhaustiveMode::StrategyVsSolver(kind) => {
                    play_record(index + i, g, &CorpusConfig::new(kind, vec![StallerKind::Optimal]), StallerKind::Optimal, None)
                }
            })
            .collect();
        index += boards.len();
        let value = |r: &GameRecord| match mode {
            ExhaustiveMode::BoundCheck => r.solver_value.unwrap_or(0),
            ExhaustiveMode::StrategyVsSolver(_) => r.moves,
        };
        let max_value = batch.iter().filter(|r| r.bound.is_some()).map(value).max().unwrap_or(0);
        let bound = match mode {
            ExhaustiveMode::BoundCheck => boards.iter().filter_map(applicable_bound).max(),
            ExhaustiveMode::StrategyVsSolver(kind) => boards.iter().filter_map(|g| strategy_bound(g, kind)).max(),
        };
        sizes.push(SizeSummary {
            n,
            graphs: boards.len(),
            max_value,
            bound,
            tight_witnesses: batch.iter().filter(|r| r.tight).map(|r| r.graph6.clone()).collect(),
        });
        records.extend(batch);
    }
    let corpus = match mode {
        ExhaustiveMode::BoundCheck => format!("all graphs n <= {max_n}, exact values"),
        ExhaustiveMode::StrategyVsSolver(k) => format!("all graphs n <= {max_n}, {k} vs optimal"),
    };
    Ok(VerificationReport::build(corpus, records, Vec::new(), sizes))
}

fn bound_record(index: usize, g: &Graph) -> GameRecord {
    let bound = applicable_bound(g);
    let (value, error) = match exact_value(g, SolverConfig::default()) {
        Some(v) => (Some(v), None),
        None => (None, Some("solver failed".to_string())),
    };
    let outcome = match (value, bound) {
        (None, _) => Outcome::Error,
        (Some(_), None) => Outcome::NotApplicable,
        (Some(v), Some(b)) if v <= b => Outcome::Pass,
        _ => Outcome::Fail,
    };
    GameRecord {
        index,
        graph6: encode_graph6(g),
        n: g.n(),
        class: degree_class(g),
        strategy: None,
        adversary: "exact".into(),
        moves: value.unwrap_or(0),
        bound,
        outcome,
        tight: value.is_some() && value == bound,
        warnings: Vec::new(),
        claim_failures: Vec::new(),
        solver_value: value,
        error,
    }
}

/// Writes a trace as JSON after checking that it replays.
pub fn emit_trace(trace: &GameTrace, path: &Path) -> Result<()> {
    verify_trace(trace)?;
    fs::write(path, serde_json::to_string_pretty(trace)?)?;
    Ok(())
}
