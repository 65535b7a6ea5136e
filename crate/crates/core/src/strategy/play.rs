//! The game driver: alternates a Dominator strategy and a Staller policy,
//! keeps the ledger, and produces a replayable trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Arena, Board, GameState, Player};
use crate::graph::{encode_graph6, parse_graph6, Graph, Vertex};
use crate::ledger::{Counters, Ledger, LedgerRecord};

use super::{
    reduce_duplicate_leaves, staller_policy, Staller, ClaimCheck, DominatorStrategy, GeneralStrategy,
    MinDeg2Strategy, MoveLift, PhaseAccounting, PhaseSnapshot, StallerKind, StrategyKind,
};

pub const TRACE_SCHEMA: &str = "tdgame-trace/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayConfig {
    pub strategy: StrategyKind,
    pub adversary: StallerKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMove {
    pub t: usize,
    pub player: Player,
    pub vertex: Vertex,
}

/// The board the strategy actually sees, when preprocessing changed it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyBoard {
    pub graph6: String,
    pub lift: MoveLift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub bound: usize,
    pub moves: usize,
    /// The bound's hypotheses hold for the board.
    pub applicable: bool,
    pub pass: bool,
    pub tight: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AccountingSummary {
    pub m: usize,
    pub r_f: usize,
    pub r_p: usize,
    pub a: usize,
    pub b: usize,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub p: usize,
    pub q: usize,
    pub c_set: Vec<Vertex>,
    pub a_certificate: Vec<Vertex>,
}

impl From<&PhaseAccounting> for AccountingSummary {
    fn from(a: &PhaseAccounting) -> Self {
        AccountingSummary {
            m: a.m,
            r_f: a.r_f,
            r_p: a.r_p,
            a: a.a,
            b: a.b,
            m1: a.m1,
            m2: a.m2,
            m3: a.m3,
            p: a.p,
            q: a.q,
            c_set: a.c_set.iter().copied().collect(),
            a_certificate: a.a_certificate.a.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameTrace {
    pub schema: String,
    pub graph6: String,
    pub n: usize,
    pub strategy: StrategyKind,
    pub adversary: String,
    pub moves: Vec<TraceMove>,
    /// Present when the strategy played on a reduced board; the ledger log
    /// and counters refer to that board.
    pub strategy_board: Option<StrategyBoard>,
    pub ledger_log: Vec<LedgerRecord>,
    pub phases: Vec<PhaseSnapshot>,
    pub accounting: AccountingSummary,
    pub claims: Vec<ClaimCheck>,
    /// Whole-game counting inequalities, reported separately from the
    /// per-phase claims.
    pub final_checks: Vec<ClaimCheck>,
    pub final_counters: Counters,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
    /// The board is outside the proof's structural assumptions.
    pub structural_warning: bool,
}

impl GameTrace {
    pub fn total_moves(&self) -> usize {
        self.moves.len()
    }

    /// Claims that failed on a board where they are expected to hold.
    pub fn claim_failures(&self) -> Vec<&ClaimCheck> {
        self.claims.iter().filter(|c| !c.holds && !c.downgraded).collect()
    }

    /// Every applicable verdict passed.
    pub fn verdicts_pass(&self) -> bool {
        self.verdicts.iter().all(|v| !v.applicable || v.pass)
    }
}

pub fn three_quarter_bound(n: usize) -> usize {
    3 * n / 4
}

pub fn five_sevenths_bound(n: usize) -> usize {
    (5 * n + 5) / 7
}

pub fn verdicts(g: &Graph, moves: usize) -> Vec<Verdict> {
    let n = g.n();
    let make = |name: &str, bound: usize, applicable: bool| Verdict {
        name: name.to_string(),
        bound,
        moves,
        applicable,
        pass: moves <= bound,
        tight: moves == bound,
    };
    vec![
        make("3n/4", three_quarter_bound(n), g.isolated_edges().is_empty()),
        make("5(n+1)/7", five_sevenths_bound(n), g.min_degree() >= 2),
    ]
}

/// A game in progress: the real game on the given board and, in lockstep,
/// the strategy's game on its (possibly reduced) board.
pub struct GameSession {
    graph: Graph,
    kind: StrategyKind,
    real: GameState,
    mine: GameState,
    board: Graph,
    lift: MoveLift,
    ledger: Ledger,
    strategy: Box<dyn DominatorStrategy>,
    moves: Vec<TraceMove>,
}

impl GameSession {
    pub fn new(g: &Graph, kind: StrategyKind) -> Result<Self> {
        let real = GameState::on_graph(g)?;
        let (board, lift) = match kind {
            StrategyKind::MinDeg2 => (g.clone(), MoveLift::identity(g.n())),
            StrategyKind::General => reduce_duplicate_leaves(g),
        };
        let mine = if lift.is_identity() { real.clone() } else { GameState::on_graph(&board)? };
        let ledger = Ledger::new(&mine)?;
        let strategy: Box<dyn DominatorStrategy> = match kind {
            StrategyKind::MinDeg2 => Box::new(MinDeg2Strategy::new(&mine)?),
            StrategyKind::General => Box::new(GeneralStrategy::new(&mine)?),
        };
        Ok(GameSession { graph: g.clone(), kind, real, mine, board, lift, ledger, strategy, moves: Vec::new() })
    }

    /// The game on the board as given.
    pub fn state(&self) -> &GameState {
        &self.real
    }

    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }

    pub fn phase(&self) -> u8 {
        self.strategy.accounting().phase
    }

    pub fn lift(&self) -> &MoveLift {
        &self.lift
    }

    pub fn is_over(&self) -> bool {
        self.real.is_terminal()
    }

    /// Asks the strategy for its move and plays it. Returns the move on the
    /// original board.
    pub fn dominator_move(&mut self) -> Result<Vertex> {
        self.check_turn(Player::Dominator)?;
        let ours = self.strategy.choose(&self.mine, &mut self.ledger)?;
        let theirs = self.lift.lift(ours);
        self.apply(Player::Dominator, theirs, ours)?;
        Ok(theirs)
    }

    /// Plays Staller's move `v`, given on the original board.
    pub fn staller_move(&mut self, v: Vertex) -> Result<()> {
        self.check_turn(Player::Staller)?;
        if v >= self.real.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.real.n() });
        }
        // The real board rejects illegal moves before anything changes.
        let ours = self.lift.lower(v);
        self.apply(Player::Staller, v, ours)
    }

    fn check_turn(&self, who: Player) -> Result<()> {
        if self.real.is_terminal() {
            return Err(Error::GameOver);
        }
        if self.mine.is_terminal() {
            return Err(Error::Strategy("reduced game ended before the real one".into()));
        }
        if self.real.mover() != who {
            return Err(Error::Strategy(format!("it is not {who:?}'s turn")));
        }
        Ok(())
    }

    fn apply(&mut self, by: Player, theirs: Vertex, ours: Vertex) -> Result<()> {
        self.real.play(theirs)?;
        self.mine.play(ours)?;
        self.moves.push(TraceMove { t: self.real.t(), player: by, vertex: theirs });
        self.strategy.observe(&self.mine, &mut self.ledger, by, ours)
    }

    /// Runs the end-of-game accounting and builds the trace.
    pub fn finish(mut self, adversary: String) -> Result<GameTrace> {
        if !self.real.is_terminal() {
            return Err(Error::Strategy("the game is not over".into()));
        }
        if !self.mine.is_terminal() {
            return Err(Error::Strategy("real game ended before the reduced one".into()));
        }
        self.strategy.finish(&self.mine, &mut self.ledger)?;
        let verdicts = verdicts(&self.graph, self.moves.len());
        Ok(self.trace(adversary, verdicts))
    }

    /// A trace of the moves so far, without end-of-game accounting or
    /// verdicts. It does not pass [`verify_trace`].
    pub fn partial_trace(&self, adversary: String) -> GameTrace {
        self.trace(adversary, Vec::new())
    }

    fn trace(&self, adversary: String, verdicts: Vec<Verdict>) -> GameTrace {
        let acct = self.strategy.accounting();
        GameTrace {
            schema: TRACE_SCHEMA.to_string(),
            graph6: encode_graph6(&self.graph),
            n: self.graph.n(),
            strategy: self.kind,
            adversary,
            moves: self.moves.clone(),
            strategy_board: (!self.lift.is_identity())
                .then(|| StrategyBoard { graph6: encode_graph6(&self.board), lift: self.lift.clone() }),
            ledger_log: self.ledger.log().to_vec(),
            phases: acct.snapshots.clone(),
            accounting: acct.into(),
            claims: acct.claims.clone(),
            final_checks: acct.final_checks.clone(),
            final_counters: self.ledger.counters(),
            verdicts,
            warnings: acct.warnings.clone(),
            structural_warning: acct.best_effort,
        }
    }
}

/// Plays one game from Dominator's first move to the end.
pub fn play_game(g: &Graph, config: PlayConfig) -> Result<GameTrace> {
    play_game_against(g, config.strategy, staller_policy(config.adversary).as_mut())
}

/// As [`play_game`] with a caller-supplied Staller.
pub fn play_game_against(g: &Graph, kind: StrategyKind, staller: &mut dyn Staller) -> Result<GameTrace> {
    let mut session = GameSession::new(g, kind)?;
    while !session.is_over() {
        match session.state().mover() {
            Player::Dominator => {
                session.dominator_move()?;
            }
            Player::Staller => {
                let v = staller.choose(session.state())?.ok_or(Error::GameOver)?;
                session.staller_move(v)?;
            }
        }
    }
    session.finish(staller.name())
}

/// Re-simulates a trace: the moves must be legal and end the game, the
/// ledger log must pass every rule again and reproduce the recorded
/// counters, and the verdicts must match.
pub fn verify_trace(trace: &GameTrace) -> Result<()> {
    if trace.schema != TRACE_SCHEMA {
        return Err(Error::Replay(format!("unknown schema {}", trace.schema)));
    }
    let g = parse_graph6(&trace.graph6)?;
    let mut real = GameState::on_graph(&g)?;
    for m in &trace.moves {
        if real.mover() != m.player {
            return Err(Error::Replay(format!("move {} attributed to the wrong player", m.t)));
        }
        real.play(m.vertex)?;
    }
    if !real.is_terminal() {
        return Err(Error::Replay("moves do not finish the game".into()));
    }
    let board = match &trace.strategy_board {
        Some(sb) => parse_graph6(&sb.graph6)?,
        None => g.clone(),
    };
    let start = GameState::new(Arena::new(Board::Graph(board))?, &[], Player::Dominator)?;
    let (end, ledger) = Ledger::replay(&start, &trace.ledger_log)?;
    if ledger.log() != trace.ledger_log.as_slice() {
        return Err(Error::Replay("ledger log counters differ on replay".into()));
    }
    if ledger.counters() != trace.final_counters {
        return Err(Error::Replay(format!(
            "final counters {:?} differ from recorded {:?}",
            ledger.counters(),
            trace.final_counters
        )));
    }
    let lowered: Vec<Vertex> = match &trace.strategy_board {
        Some(sb) => trace.moves.iter().map(|m| sb.lift.lower(m.vertex)).collect(),
        None => trace.moves.iter().map(|m| m.vertex).collect(),
    };
    if end.moves() != lowered.as_slice() {
        return Err(Error::Replay("ledger moves differ from the game's moves".into()));
    }
    if verdicts(&g, trace.moves.len()) != trace.verdicts {
        return Err(Error::Replay("verdicts differ".into()));
    }
    Ok(())
}
