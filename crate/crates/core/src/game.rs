//! Rules of the total domination game and the transversal game.
//!
//! Both games are played the same way once each board is viewed as a
//! covering system: selecting vertex `v` covers a fixed set of *targets*
//! (the vertices of `N(v)` on a graph, the edges containing `v` on a
//! hypergraph). A move is legal iff it covers a target not yet covered, and
//! the game ends when every target is covered.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    /// Dominator in the graph game, Edge-hitter in the transversal game.
    Dominator,
    Staller,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Dominator => Player::Staller,
            Player::Staller => Player::Dominator,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Dominator => "Dominator",
            Player::Staller => "Staller",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Board {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl Board {
    pub fn n(&self) -> usize {
        match self {
            Board::Graph(g) => g.n(),
            Board::Hypergraph(h) => h.n(),
        }
    }

    pub fn target_count(&self) -> usize {
        match self {
            Board::Graph(g) => g.n(),
            Board::Hypergraph(h) => h.edge_count(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Board::Graph(g) => Some(g),
            Board::Hypergraph(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Board::Graph(g) => match g.isolated_vertices().first() {
                Some(&v) => Err(Error::IsolatedVertex(v)),
                None => Ok(()),
            },
            Board::Hypergraph(h) => match h.edges().iter().position(Vec::is_empty) {
                Some(i) => Err(Error::EmptyEdge(i)),
                None => Ok(()),
            },
        }
    }
}

/// A board together with its cover lists, shared between game states.
#[derive(Debug)]
pub struct Arena {
    pub board: Board,
    covers: Vec<Vec<usize>>,
}

impl Arena {
    pub fn new(board: Board) -> Result<Arc<Arena>> {
        board.validate()?;
        let covers = match &board {
            Board::Graph(g) => g.vertices().map(|v| g.neighbors(v).to_vec()).collect(),
            Board::Hypergraph(h) => (0..h.n()).map(|v| h.incident_edges(v)).collect(),
        };
        Ok(Arc::new(Arena { board, covers }))
    }

    pub fn n(&self) -> usize {
        self.board.n()
    }

    pub fn target_count(&self) -> usize {
        self.board.target_count()
    }

    /// Targets covered by selecting `v`.
    pub fn covers(&self, v: Vertex) -> &[usize] {
        &self.covers[v]
    }
}

#[derive(Clone)]
pub struct GameState {
    arena: Arc<Arena>,
    selected: Vec<Vertex>,
    preset_len: usize,
    is_selected: Vec<bool>,
    cover_count: Vec<u32>,
    covered: usize,
    mover: Player,
}

impl GameState {
    /// Starts a game with `preset` already selected; `t` counts only later moves.
    pub fn new(arena: Arc<Arena>, preset: &[Vertex], first_mover: Player) -> Result<GameState> {
        let n = arena.n();
        let mut s = GameState {
            is_selected: vec![false; n],
            cover_count: vec![0; arena.target_count()],
            arena,
            selected: Vec::new(),
            preset_len: preset.len(),
            covered: 0,
            mover: first_mover,
        };
        for &v in preset {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if s.is_selected[v] {
                return Err(Error::IllegalMove {
                    vertex: v,
                    reason: "preset vertices must be distinct".into(),
                });
            }
            s.select(v);
        }
        Ok(s)
    }

    pub fn on_graph(g: &Graph) -> Result<GameState> {
        GameState::new(Arena::new(Board::Graph(g.clone()))?, &[], Player::Dominator)
    }

    pub fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    pub fn board(&self) -> &Board {
        &self.arena.board
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.arena.board.as_graph()
    }

    pub fn n(&self) -> usize {
        self.arena.n()
    }

    pub fn mover(&self) -> Player {
        self.mover
    }

    /// Moves made after the preset.
    pub fn t(&self) -> usize {
        self.selected.len() - self.preset_len
    }

    /// Every selected vertex, preset first, in selection order.
    pub fn selected(&self) -> &[Vertex] {
        &self.selected
    }

    pub fn moves(&self) -> &[Vertex] {
        &self.selected[self.preset_len..]
    }

    pub fn preset(&self) -> &[Vertex] {
        &self.selected[..self.preset_len]
    }

    pub fn is_played(&self, v: Vertex) -> bool {
        self.is_selected[v]
    }

    /// Graph game: `v` is totally dominated. Transversal game: edge `v` is hit.
    pub fn is_covered(&self, target: usize) -> bool {
        self.cover_count[target] > 0
    }

    pub fn is_dominated(&self, v: Vertex) -> bool {
        self.is_covered(v)
    }

    pub fn covered_count(&self) -> usize {
        self.covered
    }

    /// Number of targets `v` would newly cover.
    pub fn gain(&self, v: Vertex) -> usize {
        self.arena.covers(v).iter().filter(|&&x| self.cover_count[x] == 0).count()
    }

    pub fn is_legal(&self, v: Vertex) -> bool {
        v < self.n() && !self.is_selected[v] && self.gain(v) > 0
    }

    pub fn legal_moves(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_legal(v)).collect()
    }

    pub fn is_terminal(&self) -> bool {
        self.covered == self.arena.target_count()
    }

    /// Plays `v` in place.
    pub fn play(&mut self, v: Vertex) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        if self.is_selected[v] {
            return Err(Error::IllegalMove { vertex: v, reason: "already selected".into() });
        }
        if self.gain(v) == 0 {
            let reason = match self.board() {
                Board::Graph(_) => "every neighbor is already totally dominated",
                Board::Hypergraph(_) => "every edge containing it is already hit",
            };
            return Err(Error::IllegalMove { vertex: v, reason: reason.into() });
        }
        self.select(v);
        self.mover = self.mover.other();
        debug_assert!(self.consistent());
        Ok(())
    }

    pub fn apply_move(&self, v: Vertex) -> Result<GameState> {
        let mut next = self.clone();
        next.play(v)?;
        Ok(next)
    }

    fn select(&mut self, v: Vertex) {
        self.is_selected[v] = true;
        self.selected.push(v);
        for &x in self.arena.covers(v) {
            if self.cover_count[x] == 0 {
                self.covered += 1;
            }
            self.cover_count[x] += 1;
        }
    }

    /// Recomputes coverage from the selected list.
    fn consistent(&self) -> bool {
        let mut count = vec![0u32; self.arena.target_count()];
        for &v in &self.selected {
            for &x in self.arena.covers(v) {
                count[x] += 1;
            }
        }
        count == self.cover_count && self.covered == count.iter().filter(|&&c| c > 0).count()
    }

    /// Selected vertices as a bitmask (boards with at most 64 vertices).
    pub fn selected_mask(&self) -> u64 {
        self.selected.iter().fold(0, |m, &v| m | (1u64 << v))
    }
}

impl fmt::Debug for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameState")
            .field("preset", &self.preset())
            .field("moves", &self.moves())
            .field("mover", &self.mover)
            .field("covered", &self.covered)
            .finish()
    }
}
