//! Total domination game and transversal game on small boards: rules, an
//! exact minimax solver, observer-side bookkeeping, and executable Dominator
//! strategies whose per-phase guarantees are checked at runtime.

pub mod detect;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod ledger;
pub mod solver;
pub mod strategy;

pub use error::{Error, Result};
