//! `tdgame`: solve, play and verify total domination games from the shell.
//!
//! Exit codes: 0 pass, 1 a verdict failed or a ledger rule fired, 2 usage or
//! I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tdgame_core::game::{Arena, Board, Player};
use tdgame_core::graph::{encode_graph6, generate, open_neighborhood_hypergraph, parse_graph6, Graph, GeneratorSpec};
use tdgame_core::harness::{
    emit_trace, exhaustive_small_n, interactive_play, run_corpus, CorpusConfig, CorpusSource, ExhaustiveMode,
    VerificationReport,
};
use tdgame_core::solver::{solve_with, verify_continuation_principle, SolverConfig};
use tdgame_core::strategy::{play_game_against, staller_policy, verify_trace, GameTrace, OptimalStaller, Staller, StallerKind, StrategyKind};
use tdgame_core::Error;

#[derive(Parser)]
#[command(name = "tdgame", version, about = "Total domination game: exact values, Dominator strategies, traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact game values with both starting players.
    Solve {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Plays one game and prints the verdicts.
    Play {
        #[command(flatten)]
        board: BoardArgs,
        #[command(flatten)]
        game: GameArgs,
        /// Where to write the replay-checked trace.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Replays a trace written by `play` and checks it.
    Verify { trace: PathBuf },
    /// Plays a corpus: a graph6 file, a generator, or every small board.
    Sweep {
        /// graph6 file, one board per line.
        #[arg(long, conflicts_with_all = ["generator", "exhaustive"])]
        graph6: Option<PathBuf>,
        #[arg(long, conflicts_with = "exhaustive")]
        generator: Option<String>,
        /// Every board with up to this many vertices.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        exhaustive: Option<u8>,
        /// With --exhaustive: exact values against the bounds instead of
        /// playing the strategy.
        #[arg(long, requires = "exhaustive")]
        values: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Mindeg2)]
        strategy: StrategyArg,
        /// Repeatable; `random`, `random(7)`, `greedy` or `optimal`.
        #[arg(long, default_values_t = vec!["greedy".to_string()])]
        adversary: Vec<String>,
        /// Games per board for each random adversary.
        #[arg(long, default_value_t = 1)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<usize>,
        /// Also compute each board's exact value.
        #[arg(long)]
        solver_check: bool,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Compares the graph game with the transversal game on the open
    /// neighborhood hypergraph, and samples the continuation inequalities.
    OnhCheck {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Play Staller yourself against a Dominator strategy.
    Interactive {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::General)]
        strategy: StrategyArg,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoardArgs {
    /// A graph6 string, or a file whose first line is one.
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: optional `n <count>` header, then `u v` per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// e.g. `cycle 7`, `2*path 4`, `random_min_deg2(30, 0.15, 7)`.
    #[arg(long)]
    generator: Option<String>,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Mindeg2)]
    strategy: StrategyArg,
    /// `random`, `random(7)`, `greedy` or `optimal`.
    #[arg(long, default_value = "optimal")]
    adversary: String,
    /// Seed for `random` when the adversary carries none.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Mindeg2,
    General,
}

impl From<StrategyArg> for StrategyKind {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Mindeg2 => StrategyKind::MinDeg2,
            StrategyArg::General => StrategyKind::General,
        }
    }
}

/// Usage and I/O problems exit with 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<io::Error> for Usage {
    fn from(e: io::Error) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("tdgame: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(pass)`; a failed verdict or rule violation is `Ok(false)`.
fn run(command: Command) -> Result<bool, Usage> {
    match command {
        Command::Solve { board, budget, json_out } => solve(&load_board(&board)?, budget, json_out.as_deref()),
        Command::Play { board, game, json_out } => play(&load_board(&board)?, &game, json_out.as_deref()),
        Command::Verify { trace } => verify(&trace),
        Command::Sweep {
            graph6,
            generator,
            exhaustive,
            values,
            strategy,
            adversary,
            games,
            seed,
            budget,
            solver_check,
            json_out,
        } => {
            let report = if let Some(n) = exhaustive {
                let mode = if values {
                    ExhaustiveMode::BoundCheck
                } else {
                    ExhaustiveMode::StrategyVsSolver(strategy.into())
                };
                exhaustive_small_n(n as usize, mode)?
            } else {
                let source = match (graph6, generator) {
                    (Some(path), None) => CorpusSource::Graph6File(path),
                    (None, Some(spec)) => CorpusSource::Generator(spec.parse()?),
                    _ => return Err(Usage("sweep needs one of --graph6, --generator, --exhaustive".into())),
                };
                let adversaries =
                    adversary.iter().map(|a| parse_adversary(a, seed)).collect::<Result<Vec<_>, _>>()?;
                let config = CorpusConfig {
                    strategy: strategy.into(),
                    adversaries,
                    games,
                    seed,
                    budget,
                    solver_check,
                };
                run_corpus(&source, &config)?
            };
            print_report(&report);
            write_json(json_out.as_deref(), &report)?;
            Ok(report.exit_code() == 0)
        }
        Command::OnhCheck { board, samples, seed, budget, json_out } => {
            onh_check(&load_board(&board)?, samples, seed, budget, json_out.as_deref())
        }
        Command::Interactive { board, strategy, json_out } => {
            let g = load_board(&board)?;
            let stdin = io::stdin();
            let outcome = interactive_play(&g, strategy.into(), stdin.lock(), io::stdout())?;
            if let Some(path) = json_out.as_deref() {
                if outcome.aborted {
                    write_json(Some(path), &outcome.trace)?;
                } else {
                    emit_trace(&outcome.trace, path)?;
                }
            }
            Ok(!outcome.aborted && outcome.trace.verdicts_pass())
        }
    }
}

fn load_board(args: &BoardArgs) -> Result<Graph, Usage> {
    let g = if let Some(s) = &args.graph6 {
        if Path::new(s).is_file() {
            let text = fs::read_to_string(s)?;
            let first = text.lines().find(|l| !l.trim().is_empty()).ok_or_else(|| Usage(format!("{s} is empty")))?;
            parse_graph6(first.trim())?
        } else {
            parse_graph6(s)?
        }
    } else if let Some(path) = &args.edges {
        Graph::parse_edge_list(&fs::read_to_string(path)?)?
    } else if let Some(spec) = &args.generator {
        generate(&spec.parse::<GeneratorSpec>()?)?
    } else {
        return Err(Usage("no board given".into()));
    };
    Ok(g)
}

fn parse_adversary(s: &str, seed: u64) -> Result<StallerKind, Usage> {
    if s == "random" {
        return Ok(StallerKind::Random { seed });
    }
    Ok(s.parse()?)
}

fn solver_config(budget: Option<usize>) -> SolverConfig {
    let mut c = SolverConfig::default();
    if let Some(b) = budget {
        c.max_keys = b;
    }
    c
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Usage> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).map_err(|e| Usage(e.to_string()))?;
        fs::write(path, text)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveOutput {
    graph6: String,
    n: usize,
    gamma_tg: usize,
    gamma_tg_staller_start: usize,
    best_first_move: Option<usize>,
    nodes_expanded: u64,
}

fn solve(g: &Graph, budget: Option<usize>, json_out: Option<&Path>) -> Result<bool, Usage> {
    let arena = Arena::new(Board::Graph(g.clone()))?;
    let config = solver_config(budget);
    let d = solve_with(&arena, &[], Player::Dominator, config)?;
    let s = solve_with(&arena, &[], Player::Staller, config)?;
    let out = SolveOutput {
        graph6: encode_graph6(g),
        n: g.n(),
        gamma_tg: d.value,
        gamma_tg_staller_start: s.value,
        best_first_move: d.best_move,
        nodes_expanded: d.nodes_expanded + s.nodes_expanded,
    };
    println!("graph6 {}  n = {}", out.graph6, out.n);
    match out.best_first_move {
        Some(v) => println!("gamma_tg  = {}  (Dominator starts; best first move {v})", out.gamma_tg),
        None => println!("gamma_tg  = {}  (Dominator starts)", out.gamma_tg),
    }
    println!("gamma'_tg = {}  (Staller starts)", out.gamma_tg_staller_start);
    write_json(json_out, &out)?;
    Ok(true)
}

fn play(g: &Graph, args: &GameArgs, json_out: Option<&Path>) -> Result<bool, Usage> {
    let kind: StrategyKind = args.strategy.into();
    let adversary = parse_adversary(&args.adversary, args.seed)?;
    let mut staller: Box<dyn Staller + Send> = match adversary {
        StallerKind::Optimal => Box::new(OptimalStaller::new(solver_config(args.budget))),
        other => staller_policy(other),
    };
    let trace = play_game_against(g, kind, staller.as_mut())?;
    print_trace(&trace);
    if let Some(path) = json_out {
        emit_trace(&trace, path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(trace.verdicts_pass())
}

fn print_trace(t: &GameTrace) {
    let moves: Vec<String> =
        t.moves.iter().map(|m| format!("{}{}", if m.player == Player::Dominator { "D" } else { "S" }, m.vertex)).collect();
    println!("{} vs {} on {} (n = {})", t.strategy, t.adversary, t.graph6, t.n);
    println!("moves ({}): {}", t.total_moves(), moves.join(" "));
    let lengths: Vec<String> = t.phases.iter().map(|p| format!("T{}={}", p.phase, p.moves)).collect();
    println!("phases: {}", lengths.join(" "));
    for v in &t.verdicts {
        let status = match (v.applicable, v.pass, v.tight) {
            (false, _, _) => "not applicable",
            (true, true, true) => "pass (tight)",
            (true, true, false) => "pass",
            (true, false, _) => "FAIL",
        };
        println!("bound {:>8} = {:>3}: {status}", v.name, v.bound);
    }
    if t.structural_warning {
        println!("best-effort board: claim failures are reported as warnings");
    }
    for c in t.claims.iter().chain(&t.final_checks).filter(|c| !c.holds) {
        let tag = if c.downgraded { "warning" } else { "claim failed" };
        println!("{tag}: phase {} {} ({})", c.phase, c.name, c.detail);
    }
}

fn verify(path: &Path) -> Result<bool, Usage> {
    let text = fs::read_to_string(path)?;
    let trace: GameTrace = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    match verify_trace(&trace) {
        Ok(()) => {
            println!("{}: replay ok, {} moves", path.display(), trace.total_moves());
            Ok(trace.verdicts_pass())
        }
        Err(e) => {
            println!("{}: replay failed: {e}", path.display());
            Ok(false)
        }
    }
}

#[derive(Serialize)]
struct OnhOutput {
    graph6: String,
    gamma_tg: usize,
    tau_g: usize,
    gamma_tg_staller_start: usize,
    tau_g_staller_start: usize,
    equal: bool,
    continuation: tdgame_core::solver::ContinuationReport,
}

fn onh_check(g: &Graph, samples: usize, seed: u64, budget: Option<usize>, json_out: Option<&Path>) -> Result<bool, Usage> {
    let config = solver_config(budget);
    let graph = Arena::new(Board::Graph(g.clone()))?;
    let hyper = Arena::new(Board::Hypergraph(open_neighborhood_hypergraph(g)?))?;
    let value = |a, p| solve_with(a, &[], p, config).map(|r| r.value);
    let out = OnhOutput {
        graph6: encode_graph6(g),
        gamma_tg: value(&graph, Player::Dominator)?,
        tau_g: value(&hyper, Player::Dominator)?,
        gamma_tg_staller_start: value(&graph, Player::Staller)?,
        tau_g_staller_start: value(&hyper, Player::Staller)?,
        equal: false,
        continuation: verify_continuation_principle(&hyper, samples, seed)?,
    };
    let out = OnhOutput { equal: out.gamma_tg == out.tau_g && out.gamma_tg_staller_start == out.tau_g_staller_start, ..out };
    println!("gamma_tg = {}, tau_g(ONH) = {}", out.gamma_tg, out.tau_g);
    println!("gamma'_tg = {}, tau'_g(ONH) = {}", out.gamma_tg_staller_start, out.tau_g_staller_start);
    println!(
        "continuation: {} checks over {} samples, {} violations",
        out.continuation.checks,
        out.continuation.samples,
        out.continuation.violations.len()
    );
    write_json(json_out, &out)?;
    Ok(out.equal && out.continuation.violations.is_empty())
}

fn print_report(r: &VerificationReport) {
    println!("corpus: {}", r.corpus);
    for m in &r.malformed {
        println!("malformed {m}");
    }
    for s in &r.sizes {
        println!(
            "n = {}: {} boards, max {} vs bound {}, {} tight",
            s.n,
            s.graphs,
            s.max_value,
            s.bound.map_or("none".to_string(), |b| b.to_string()),
            s.tight_witnesses.len()
        );
    }
    for rec in r.records.iter().filter(|rec| rec.error.is_some() || !rec.claim_failures.is_empty()) {
        println!("{} [{}] {:?}: {}", rec.graph6, rec.adversary, rec.outcome, rec.error.clone().unwrap_or_else(|| rec.claim_failures.join("; ")));
    }
    let out = io::stdout();
    let mut out = out.lock();
    let _ = writeln!(
        out,
        "{} games, {} verdict failures, {} errors, {} with claim failures: {}",
        r.records.len(),
        r.failures,
        r.errors,
        r.claim_failures,
        if r.pass { "PASS" } else { "FAIL" }
    );
}

