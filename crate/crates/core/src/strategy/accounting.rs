use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::detect::SeparationCertificate;
use crate::graph::Vertex;
use crate::ledger::Counters;

/// Counters at the end of one phase. Phases never entered have `moves == 0`
/// and repeat the previous counters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSnapshot {
    pub phase: u8,
    pub entered: bool,
    /// `t_i`: moves played when the phase ended.
    pub t_end: usize,
    /// `T_i`.
    pub moves: usize,
    pub counters: Counters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub phase: u8,
    pub name: String,
    pub holds: bool,
    /// The claim failed on a board outside the proof's structural
    /// assumptions, so the failure is reported as a warning.
    pub downgraded: bool,
    pub detail: String,
}

/// Per-phase scalars of a running strategy.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PhaseAccounting {
    pub phase: u8,
    pub snapshots: Vec<PhaseSnapshot>,
    /// Largest set with a triple separation, computed at the start.
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
    pub reaction_flag: bool,
    pub a_certificate: SeparationCertificate,
    pub c_set: BTreeSet<Vertex>,
    pub claims: Vec<ClaimCheck>,
    /// Whole-game inequalities of the final counting, phase 0.
    pub final_checks: Vec<ClaimCheck>,
    pub warnings: Vec<String>,
    pub best_effort: bool,
}

impl PhaseAccounting {
    pub fn new(best_effort: bool) -> Self {
        PhaseAccounting { phase: 1, best_effort, ..Default::default() }
    }

    /// Closes the current phase at `t` with `counters`, then moves on.
    pub fn close_phase(&mut self, t: usize, counters: Counters, entered: bool) {
        let prev_t = self.snapshots.last().map_or(0, |s| s.t_end);
        self.snapshots.push(PhaseSnapshot {
            phase: self.phase,
            entered,
            t_end: t,
            moves: t - prev_t,
            counters,
        });
        self.phase += 1;
    }

    /// Pads never-entered phases up to `last` after the game ended.
    pub fn pad_to(&mut self, last: u8, t: usize, counters: Counters) {
        while self.phase <= last {
            self.close_phase(t, counters, false);
        }
    }

    /// `T_i` (phases are 1-based).
    pub fn big_t(&self, i: usize) -> usize {
        self.snapshots.get(i - 1).map_or(0, |s| s.moves)
    }

    /// Counters at `t_i`; `t_0` is the fresh game.
    pub fn at(&self, i: usize) -> Counters {
        if i == 0 {
            return Counters::default();
        }
        self.snapshots[i - 1].counters
    }

    /// Phase 0 goes to the final checks, everything else is a phase claim.
    pub fn claim(&mut self, phase: u8, name: &str, holds: bool, detail: String) {
        let out = if phase == 0 { &mut self.final_checks } else { &mut self.claims };
        out.push(ClaimCheck {
            phase,
            name: name.to_string(),
            holds,
            downgraded: !holds && self.best_effort,
            detail,
        });
    }

    pub fn warn(&mut self, msg: String) {
        self.warnings.push(msg);
    }

    /// Claims that failed on a board inside the proof's assumptions.
    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.claims.iter().filter(|c| !c.holds && !c.downgraded)
    }
}
