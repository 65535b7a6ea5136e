use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Arena, GameState, Player};
use crate::graph::Vertex;
use crate::solver::{Solver, SolverConfig};

/// A Staller policy. Returns `None` exactly on terminal states.
pub trait Staller {
    fn name(&self) -> String;
    fn choose(&mut self, s: &GameState) -> Result<Option<Vertex>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StallerKind {
    Random { seed: u64 },
    Greedy,
    Optimal,
}

impl fmt::Display for StallerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StallerKind::Random { seed } => write!(f, "random({seed})"),
            StallerKind::Greedy => f.write_str("greedy"),
            StallerKind::Optimal => f.write_str("optimal"),
        }
    }
}

impl FromStr for StallerKind {
    type Err = Error;

    /// `random`, `random(7)`, `random:7`, `greedy` or `optimal`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Strategy(format!("unknown adversary '{s}' (random[(seed)], greedy, optimal)"));
        match s {
            "greedy" => return Ok(StallerKind::Greedy),
            "optimal" => return Ok(StallerKind::Optimal),
            "random" => return Ok(StallerKind::Random { seed: 0 }),
            _ => {}
        }
        let rest = s.strip_prefix("random").ok_or_else(bad)?;
        let digits = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| rest.strip_prefix(':'))
            .ok_or_else(bad)?;
        let seed = digits.parse().map_err(|_| bad())?;
        Ok(StallerKind::Random { seed })
    }
}

pub fn staller_policy(kind: StallerKind) -> Box<dyn Staller + Send> {
    match kind {
        StallerKind::Random { seed } => Box::new(RandomStaller::new(seed)),
        StallerKind::Greedy => Box::new(GreedyStaller),
        StallerKind::Optimal => Box::new(OptimalStaller::new(SolverConfig::default())),
    }
}

/// Uniform over legal moves.
pub struct RandomStaller {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStaller {
    pub fn new(seed: u64) -> Self {
        RandomStaller { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Staller for RandomStaller {
    fn name(&self) -> String {
        format!("random({})", self.seed)
    }

    fn choose(&mut self, s: &GameState) -> Result<Option<Vertex>> {
        check_turn(s)?;
        Ok(s.legal_moves().choose(&mut self.rng).copied())
    }
}

/// Fewest newly dominated vertices, lowest index on ties.
pub struct GreedyStaller;

impl Staller for GreedyStaller {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn choose(&mut self, s: &GameState) -> Result<Option<Vertex>> {
        check_turn(s)?;
        Ok(s.legal_moves().into_iter().min_by_key(|&v| (s.gain(v), v)))
    }
}

/// Exact maximizer. The solver and its cache persist across calls on the same
/// board; a board too large for the budget is an error, never a fallback.
pub struct OptimalStaller {
    config: SolverConfig,
    solver: Option<(Arc<Arena>, Solver)>,
}

impl OptimalStaller {
    pub fn new(config: SolverConfig) -> Self {
        OptimalStaller { config, solver: None }
    }
}

impl Staller for OptimalStaller {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn choose(&mut self, s: &GameState) -> Result<Option<Vertex>> {
        check_turn(s)?;
        if s.is_terminal() {
            return Ok(None);
        }
        let stale = self.solver.as_ref().is_none_or(|(arena, _)| !Arc::ptr_eq(arena, s.arena()));
        if stale {
            self.solver = Some((s.arena().clone(), Solver::for_state(s, self.config)?));
        }
        let (_, solver) = self.solver.as_mut().expect("just built");
        Ok(solver.solve_mask(s.selected_mask(), Player::Staller)?.best_move)
    }
}

fn check_turn(s: &GameState) -> Result<()> {
    if !s.is_terminal() && s.mover() != Player::Staller {
        return Err(Error::Strategy("Staller asked to move on Dominator's turn".into()));
    }
    Ok(())
}
