//! Observer-side bookkeeping: white/black paint, depleted/dependent marks and
//! the counters derived from them. The ledger never chooses anything; it only
//! records what a strategy asks for and rejects anything the marking rules
//! forbid.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Result;
use crate::game::{Arena, Board, GameState, Player};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mark {
    None,
    Depleted,
    Dependent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum RuleViolation {
    #[error("vertex {0} is not totally dominated and must stay white")]
    PaintUndominated(Vertex),
    #[error("vertex {0} cannot be depleted: it has been played")]
    DepletePlayed(Vertex),
    #[error("vertex {vertex} cannot be depleted: white neighbor {white}")]
    DepleteWhiteNeighbor { vertex: Vertex, white: Vertex },
    #[error("vertex {0} is dependent and cannot also be depleted")]
    DepleteDependent(Vertex),
    #[error("vertex {vertex} cannot be dependent: {whites} white neighbors")]
    DependentTooManyWhites { vertex: Vertex, whites: usize },
    #[error("vertex {0} is depleted and cannot also be dependent")]
    DependentDepleted(Vertex),
    #[error("vertex {0} was played after being marked depleted")]
    PlayedDepleted(Vertex),
    #[error("the ledger requires a graph board")]
    NotAGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LedgerEvent {
    Move { vertex: Vertex, player: Player },
    Paint { vertex: Vertex },
    Depleted { vertex: Vertex },
    Dependent { vertex: Vertex },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub beta: usize,
    pub delta: usize,
    pub lambda: usize,
    pub sigma: usize,
    pub nu: usize,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    /// Moves played (after any preset) when the event happened.
    pub t: usize,
    pub event: LedgerEvent,
    pub counters: Counters,
}

#[derive(Clone, Debug)]
pub struct Ledger {
    arena: Arc<Arena>,
    color: Vec<Color>,
    mark: Vec<Mark>,
    leaf: Vec<bool>,
    dominated: Vec<bool>,
    played: Vec<bool>,
    synced_moves: usize,
    beta: usize,
    delta: usize,
    lambda: usize,
    sigma: usize,
    log: Vec<LedgerRecord>,
}

impl Ledger {
    /// Fresh all-white ledger for a graph game. Preset vertices are treated as
    /// already played.
    pub fn new(s: &GameState) -> std::result::Result<Ledger, RuleViolation> {
        let g = s.graph().ok_or(RuleViolation::NotAGraph)?;
        let n = g.n();
        let leaf = g.vertices().map(|v| g.degree(v) == 1).collect();
        let mut ledger = Ledger {
            arena: s.arena().clone(),
            color: vec![Color::White; n],
            mark: vec![Mark::None; n],
            leaf,
            dominated: vec![false; n],
            played: vec![false; n],
            synced_moves: 0,
            beta: 0,
            delta: 0,
            lambda: 0,
            sigma: 0,
            log: Vec::new(),
        };
        for &v in s.preset() {
            ledger.played[v] = true;
        }
        for v in 0..n {
            ledger.dominated[v] = s.is_dominated(v);
        }
        Ok(ledger)
    }

    pub fn graph(&self) -> &Graph {
        match &self.arena.board {
            Board::Graph(g) => g,
            Board::Hypergraph(_) => unreachable!("ledger is only built for graph boards"),
        }
    }

    /// Processes any moves of `s` not seen yet.
    pub fn sync(&mut self, s: &GameState) -> std::result::Result<(), RuleViolation> {
        let moves = s.moves();
        while self.synced_moves < moves.len() {
            let v = moves[self.synced_moves];
            self.synced_moves += 1;
            if self.mark[v] == Mark::Depleted {
                return Err(RuleViolation::PlayedDepleted(v));
            }
            self.played[v] = true;
            for &w in self.graph().neighbors(v).to_vec().iter() {
                self.dominated[w] = true;
            }
            if self.leaf[v] {
                self.lambda += 1;
            }
            // Mover of move k alternates from the first mover.
            let player = if (moves.len() - self.synced_moves) % 2 == 0 {
                s.mover().other()
            } else {
                s.mover()
            };
            self.push(LedgerEvent::Move { vertex: v, player });
        }
        Ok(())
    }

    fn push(&mut self, event: LedgerEvent) {
        let counters = self.counters();
        self.log.push(LedgerRecord { t: self.synced_moves, event, counters });
    }

    pub fn paint_black(&mut self, s: &GameState, v: Vertex) -> Result<()> {
        self.sync(s)?;
        if self.color[v] == Color::Black {
            return Ok(());
        }
        if !self.dominated[v] {
            return Err(RuleViolation::PaintUndominated(v).into());
        }
        self.color[v] = Color::Black;
        self.beta += 1;
        self.push(LedgerEvent::Paint { vertex: v });
        Ok(())
    }

    pub fn mark_depleted(&mut self, s: &GameState, v: Vertex) -> Result<()> {
        self.sync(s)?;
        self.check_depleted(v)?;
        if self.mark[v] == Mark::Depleted {
            return Ok(());
        }
        self.mark[v] = Mark::Depleted;
        self.delta += 1;
        if self.leaf[v] {
            self.lambda += 1;
        }
        self.push(LedgerEvent::Depleted { vertex: v });
        Ok(())
    }

    pub fn mark_dependent(&mut self, s: &GameState, v: Vertex) -> Result<()> {
        self.sync(s)?;
        self.check_dependent(v)?;
        if self.mark[v] == Mark::Dependent {
            return Ok(());
        }
        self.mark[v] = Mark::Dependent;
        self.sigma += 1;
        self.push(LedgerEvent::Dependent { vertex: v });
        Ok(())
    }

    fn check_depleted(&self, v: Vertex) -> std::result::Result<(), RuleViolation> {
        match self.mark[v] {
            Mark::Depleted => return Ok(()),
            Mark::Dependent => return Err(RuleViolation::DepleteDependent(v)),
            Mark::None => {}
        }
        if self.played[v] {
            return Err(RuleViolation::DepletePlayed(v));
        }
        if let Some(&w) = self.graph().neighbors(v).iter().find(|&&w| self.is_white(w)) {
            return Err(RuleViolation::DepleteWhiteNeighbor { vertex: v, white: w });
        }
        Ok(())
    }

    fn check_dependent(&self, v: Vertex) -> std::result::Result<(), RuleViolation> {
        match self.mark[v] {
            Mark::Dependent => return Ok(()),
            Mark::Depleted => return Err(RuleViolation::DependentDepleted(v)),
            Mark::None => {}
        }
        let whites = self.white_degree(v);
        if whites > 1 {
            return Err(RuleViolation::DependentTooManyWhites { vertex: v, whites });
        }
        Ok(())
    }

    /// Whether `mark_depleted(v)` would succeed and change something.
    pub fn can_deplete(&self, v: Vertex) -> bool {
        self.mark[v] == Mark::None && self.check_depleted(v).is_ok()
    }

    /// Whether `mark_dependent(v)` would succeed and change something.
    pub fn can_mark_dependent(&self, v: Vertex) -> bool {
        self.mark[v] == Mark::None && self.check_dependent(v).is_ok()
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.color[v]
    }

    pub fn is_white(&self, v: Vertex) -> bool {
        self.color[v] == Color::White
    }

    pub fn mark(&self, v: Vertex) -> Mark {
        self.mark[v]
    }

    pub fn is_depleted(&self, v: Vertex) -> bool {
        self.mark[v] == Mark::Depleted
    }

    pub fn is_dependent(&self, v: Vertex) -> bool {
        self.mark[v] == Mark::Dependent
    }

    /// Dependent vertices that were played after being marked. They stay in
    /// sigma, so the played/unplayed split double-counts them.
    pub fn played_dependents(&self, s: &GameState) -> usize {
        s.moves().iter().filter(|&&v| self.is_dependent(v)).count()
    }

    pub fn is_played(&self, v: Vertex) -> bool {
        self.played[v]
    }

    pub fn is_dominated(&self, v: Vertex) -> bool {
        self.dominated[v]
    }

    pub fn white_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.graph().neighbors(v).iter().copied().filter(|&w| self.is_white(w)).collect()
    }

    pub fn white_degree(&self, v: Vertex) -> usize {
        self.graph().neighbors(v).iter().filter(|&&w| self.is_white(w)).count()
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    /// `nu`: undominated vertices with at least one dependent neighbor.
    pub fn nu(&self) -> usize {
        let g = self.graph();
        g.vertices()
            .filter(|&w| !self.dominated[w] && g.neighbors(w).iter().any(|&x| self.is_dependent(x)))
            .count()
    }

    pub fn counters(&self) -> Counters {
        let nu = self.nu();
        Counters {
            beta: self.beta,
            delta: self.delta,
            lambda: self.lambda,
            sigma: self.sigma,
            nu,
            chi: self.sigma as i64 - nu as i64,
        }
    }

    pub fn log(&self) -> &[LedgerRecord] {
        &self.log
    }

    /// Paints every dominated white vertex black. Returns how many changed.
    pub fn paint_all_dominated(&mut self, s: &GameState) -> Result<usize> {
        self.sync(s)?;
        let mut painted = 0;
        for v in 0..self.n() {
            if self.is_white(v) && self.dominated[v] {
                self.paint_black(s, v)?;
                painted += 1;
            }
        }
        Ok(painted)
    }

    /// Marks every vertex that the rules allow as depleted. Returns how many.
    pub fn deplete_all_eligible(&mut self, s: &GameState) -> Result<usize> {
        self.sync(s)?;
        let mut count = 0;
        for v in 0..self.n() {
            if self.can_deplete(v) {
                self.mark_depleted(s, v)?;
                count += 1;
            }
        }
        Ok(count)
    }

    /// Re-applies a recorded event log against a fresh game, checking every
    /// rule again. Returns the rebuilt ledger.
    pub fn replay(start: &GameState, records: &[LedgerRecord]) -> Result<(GameState, Ledger)> {
        let mut s = start.clone();
        let mut ledger = Ledger::new(&s)?;
        for rec in records {
            match rec.event {
                LedgerEvent::Move { vertex, .. } => {
                    s.play(vertex)?;
                    ledger.sync(&s)?;
                }
                LedgerEvent::Paint { vertex } => ledger.paint_black(&s, vertex)?,
                LedgerEvent::Depleted { vertex } => ledger.mark_depleted(&s, vertex)?,
                LedgerEvent::Dependent { vertex } => ledger.mark_dependent(&s, vertex)?,
            }
        }
        Ok((s, ledger))
    }
}
