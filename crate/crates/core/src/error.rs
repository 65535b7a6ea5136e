use thiserror::Error;

use crate::ledger::RuleViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("cannot generate graph: {0}")]
    Generate(String),

    #[error("vertex {vertex} is out of range for a board with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} is isolated; the game is undefined on boards with isolated vertices")]
    IsolatedVertex(usize),

    #[error("hypergraph edge {0} is empty and can never be hit")]
    EmptyEdge(usize),

    #[error("illegal move {vertex}: {reason}")]
    IllegalMove { vertex: usize, reason: String },

    #[error("game is already over")]
    GameOver,

    #[error("ledger rule violated: {0}")]
    Rule(#[from] RuleViolation),

    #[error("solver budget exceeded: {keys} cache keys (limit {limit})")]
    BudgetExceeded { keys: usize, limit: usize },

    #[error("board with {n} vertices exceeds the solver limit of {limit}")]
    BoardTooLarge { n: usize, limit: usize },

    #[error("strategy error: {0}")]
    Strategy(String),

    #[error("trace replay mismatch: {0}")]
    Replay(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
