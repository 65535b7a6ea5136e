//! Dominator strategies with their phase accounting, Staller policies, the
//! duplicate-leaf reduction and the game driver that ties them together.

mod accounting;
mod general;
mod mindeg2;
mod play;
mod reduce;
mod sequence;
mod staller;

pub use accounting::{ClaimCheck, PhaseAccounting, PhaseSnapshot};
pub use general::GeneralStrategy;
pub use mindeg2::MinDeg2Strategy;
pub use play::{
    five_sevenths_bound, play_game, play_game_against, three_quarter_bound, verdicts, verify_trace,
    AccountingSummary, GameSession, GameTrace, PlayConfig, StrategyBoard, TraceMove, Verdict,
    TRACE_SCHEMA,
};
pub use reduce::{parent_edge_violations, reduce_duplicate_leaves, structural_issues, MoveLift};
pub use staller::{
    staller_policy, GreedyStaller, OptimalStaller, RandomStaller, Staller, StallerKind,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameState, Player};
use crate::graph::Vertex;
use crate::ledger::Ledger;

/// A Dominator strategy that keeps its own ledger bookkeeping.
///
/// The driver calls `choose` on Dominator's turns, `observe` after every move
/// (both players) and `finish` once the game is over. Strategies may paint and
/// mark at any of these points.
pub trait DominatorStrategy {
    fn name(&self) -> &'static str;
    fn choose(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<Vertex>;
    fn observe(&mut self, s: &GameState, ledger: &mut Ledger, by: Player, v: Vertex) -> Result<()>;
    fn finish(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<()>;
    fn accounting(&self) -> &PhaseAccounting;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    MinDeg2,
    General,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::MinDeg2 => "mindeg2",
            StrategyKind::General => "general",
        })
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mindeg2" | "min-deg-2" => Ok(StrategyKind::MinDeg2),
            "general" => Ok(StrategyKind::General),
            _ => Err(Error::Strategy(format!("unknown strategy '{s}' (mindeg2, general)"))),
        }
    }
}

pub(crate) fn ensure_turn(s: &GameState, who: Player) -> Result<()> {
    if s.is_terminal() {
        return Err(Error::GameOver);
    }
    if s.mover() != who {
        return Err(Error::Strategy(format!("asked to move for {who} on {}'s turn", s.mover())));
    }
    Ok(())
}

/// Lowest legal vertex; the fallback whenever a rule leaves the choice open.
pub(crate) fn lowest_legal(s: &GameState) -> Result<Vertex> {
    (0..s.n()).find(|&v| s.is_legal(v)).ok_or(Error::GameOver)
}
