//! Structure searches over the current white/black coloring.
//!
//! Everything here is a pure function of a graph and a per-vertex `white`
//! flag, so the searches can be fed arbitrary colorings in tests. The
//! `*_in` helpers read the coloring off a live ledger.

mod config;
mod separable;
mod walk;

pub use config::{find_phase3_configuration, ConfigTag, Phase3Config};
pub use separable::{
    brute_force_separable_size, max_triple_separation, max_white_separable, SeparationCertificate,
};
pub use walk::{find_walk, find_walk_from, Walk, WalkKind};

use crate::game::GameState;
use crate::graph::Vertex;
use crate::ledger::Ledger;

pub fn white_mask(ledger: &Ledger) -> Vec<bool> {
    (0..ledger.n()).map(|v| ledger.is_white(v)).collect()
}

pub fn find_walk_in(ledger: &Ledger, k: usize, kind: WalkKind) -> Option<Walk> {
    find_walk(ledger.graph(), &white_mask(ledger), k, kind)
}

/// Largest white-separable set: members unplayed, triples white.
pub fn max_white_separable_set(s: &GameState, ledger: &Ledger) -> SeparationCertificate {
    let eligible: Vec<bool> = (0..s.n()).map(|v| !s.is_played(v)).collect();
    max_white_separable(ledger.graph(), &white_mask(ledger), &eligible)
}

pub fn find_phase3_configuration_in(ledger: &Ledger) -> Option<Phase3Config> {
    find_phase3_configuration(ledger.graph(), &white_mask(ledger))
}

/// Vertices with exactly `k` white neighbors, ascending.
pub fn with_white_degree(ledger: &Ledger, k: usize) -> Vec<Vertex> {
    (0..ledger.n()).filter(|&v| ledger.white_degree(v) == k).collect()
}
