//! Exact game values by memoized minimax.
//!
//! A position is determined by the selected set and the player to move, so
//! the cache key is `(selected bitmask, mover)`; coverage is recomputed from
//! the selected set. Values count moves still to be made, never the preset.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{Arena, Board, GameState, Player};
use crate::graph::{open_neighborhood_hypergraph, Graph, Vertex};

pub const DEFAULT_MAX_VERTICES: usize = 22;
pub const DEFAULT_MAX_KEYS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_vertices: usize,
    /// Hard cap on distinct cache entries.
    pub max_keys: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_vertices: DEFAULT_MAX_VERTICES, max_keys: DEFAULT_MAX_KEYS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolverResult {
    pub value: usize,
    pub best_move: Option<Vertex>,
    pub nodes_expanded: u64,
    pub from_cache: bool,
}

/// Memoizing solver bound to one board. The cache stays valid across queries
/// on the same board, so an optimal adversary can reuse it move after move.
pub struct Solver {
    cover: Vec<u128>,
    all: u128,
    config: SolverConfig,
    cache: FxHashMap<(u64, bool), u8>,
    nodes: u64,
}

impl Solver {
    pub fn new(arena: &Arena, config: SolverConfig) -> Result<Solver> {
        let n = arena.n();
        let limit = config.max_vertices.min(64);
        if n > limit {
            return Err(Error::BoardTooLarge { n, limit });
        }
        if arena.target_count() > 128 {
            return Err(Error::BoardTooLarge { n: arena.target_count(), limit: 128 });
        }
        let cover: Vec<u128> = (0..n)
            .map(|v| arena.covers(v).iter().fold(0u128, |m, &x| m | (1u128 << x)))
            .collect();
        let all = if arena.target_count() == 128 {
            u128::MAX
        } else {
            (1u128 << arena.target_count()) - 1
        };
        Ok(Solver { cover, all, config, cache: FxHashMap::default(), nodes: 0 })
    }

    pub fn for_state(s: &GameState, config: SolverConfig) -> Result<Solver> {
        Solver::new(s.arena(), config)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn covered(&self, selected: u64) -> u128 {
        let mut m = 0u128;
        let mut rest = selected;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            m |= self.cover[v];
            rest &= rest - 1;
        }
        m
    }

    /// Minimax value of the position with `selected` chosen and `mover` to play.
    pub fn value(&mut self, selected: u64, mover: Player) -> Result<usize> {
        let covered = self.covered(selected);
        self.value_rec(selected, covered, mover == Player::Dominator)
    }

    fn value_rec(&mut self, selected: u64, covered: u128, minimizing: bool) -> Result<usize> {
        if covered == self.all {
            return Ok(0);
        }
        if let Some(&v) = self.cache.get(&(selected, minimizing)) {
            return Ok(v as usize);
        }
        self.nodes += 1;
        let mut best = if minimizing { usize::MAX } else { 0 };
        for v in 0..self.cover.len() {
            if selected & (1 << v) != 0 || self.cover[v] & !covered == 0 {
                continue;
            }
            let child = 1 + self.value_rec(selected | (1 << v), covered | self.cover[v], !minimizing)?;
            best = if minimizing { best.min(child) } else { best.max(child) };
        }
        if self.cache.len() >= self.config.max_keys {
            return Err(Error::BudgetExceeded { keys: self.cache.len() + 1, limit: self.config.max_keys });
        }
        self.cache.insert((selected, minimizing), best as u8);
        Ok(best)
    }

    /// Solves the position of `s` (its selected set and mover).
    pub fn solve_state(&mut self, s: &GameState) -> Result<SolverResult> {
        self.solve_mask(s.selected_mask(), s.mover())
    }

    pub fn solve_mask(&mut self, selected: u64, mover: Player) -> Result<SolverResult> {
        let nodes_before = self.nodes;
        let minimizing = mover == Player::Dominator;
        let from_cache = self.cache.contains_key(&(selected, minimizing));
        let covered = self.covered(selected);
        if covered == self.all {
            return Ok(SolverResult { value: 0, best_move: None, nodes_expanded: 0, from_cache });
        }
        let mut best: Option<(usize, Vertex)> = None;
        for v in 0..self.cover.len() {
            if selected & (1 << v) != 0 || self.cover[v] & !covered == 0 {
                continue;
            }
            let child =
                1 + self.value_rec(selected | (1 << v), covered | self.cover[v], !minimizing)?;
            let better = match best {
                None => true,
                Some((b, _)) => if minimizing { child < b } else { child > b },
            };
            if better {
                best = Some((child, v));
            }
        }
        let (value, mv) = best.expect("a non-terminal position has a legal move");
        Ok(SolverResult {
            value,
            best_move: Some(mv),
            nodes_expanded: self.nodes - nodes_before,
            from_cache,
        })
    }
}

/// Game value of `board` starting from `preset` with `first_mover` to play.
pub fn solve(arena: &Arc<Arena>, preset: &[Vertex], first_mover: Player) -> Result<SolverResult> {
    solve_with(arena, preset, first_mover, SolverConfig::default())
}

pub fn solve_with(
    arena: &Arc<Arena>,
    preset: &[Vertex],
    first_mover: Player,
    config: SolverConfig,
) -> Result<SolverResult> {
    let s = GameState::new(arena.clone(), preset, first_mover)?;
    Solver::for_state(&s, config)?.solve_state(&s)
}

/// `gamma_tg(g)` (Dominator starts) with default limits.
pub fn gamma_tg(g: &Graph) -> Result<usize> {
    Ok(solve(&Arena::new(Board::Graph(g.clone()))?, &[], Player::Dominator)?.value)
}

/// `gamma'_tg(g)` (Staller starts) with default limits.
pub fn gamma_tg_staller_start(g: &Graph) -> Result<usize> {
    Ok(solve(&Arena::new(Board::Graph(g.clone()))?, &[], Player::Staller)?.value)
}

/// Whether both starting conventions give the same value on `g` and on its
/// open neighborhood hypergraph.
pub fn gamma_equals_tau_on_onh(g: &Graph) -> Result<bool> {
    let graph = Arena::new(Board::Graph(g.clone()))?;
    let hyper = Arena::new(Board::Hypergraph(open_neighborhood_hypergraph(g)?))?;
    for first in [Player::Dominator, Player::Staller] {
        if solve(&graph, &[], first)?.value != solve(&hyper, &[], first)?.value {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuationViolation {
    pub preset: Vec<Vertex>,
    pub v: Vertex,
    pub w: Vertex,
    pub inequality: &'static str,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContinuationReport {
    pub samples: usize,
    pub checks: usize,
    pub violations: Vec<ContinuationViolation>,
}

/// Samples `(A, v, w)` and checks `tau(A+v+w) <= tau(A+w)` and
/// `tau(A) <= tau'(A) + 1`, all values excluding the preset.
pub fn verify_continuation_principle(
    arena: &Arc<Arena>,
    samples: usize,
    seed: u64,
) -> Result<ContinuationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probe = GameState::new(arena.clone(), &[], Player::Dominator)?;
    let mut solver = Solver::for_state(&probe, SolverConfig::default())?;
    let n = arena.n();
    let mut report = ContinuationReport { samples, ..Default::default() };
    for _ in 0..samples {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(&mut rng);
        let k = rng.gen_range(0..=n.saturating_sub(2));
        let preset: Vec<Vertex> = order[..k].to_vec();
        let a = preset.iter().fold(0u64, |m, &x| m | (1 << x));
        report.checks += 1;
        let tau = solver.value(a, Player::Dominator)?;
        let tau_s = solver.value(a, Player::Staller)?;
        if tau > tau_s + 1 {
            report.violations.push(ContinuationViolation {
                preset: preset.clone(),
                v: usize::MAX,
                w: usize::MAX,
                inequality: "tau(A) <= tau'(A) + 1",
                lhs: tau,
                rhs: tau_s + 1,
            });
        }
        if n >= k + 2 {
            let (v, w) = (order[k], order[k + 1]);
            report.checks += 1;
            let lhs = solver.value(a | (1 << v) | (1 << w), Player::Dominator)?;
            let rhs = solver.value(a | (1 << w), Player::Dominator)?;
            if lhs > rhs {
                report.violations.push(ContinuationViolation {
                    preset,
                    v,
                    w,
                    inequality: "tau(A+v+w) <= tau(A+w)",
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(report)
}
