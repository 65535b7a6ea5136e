//! Verification runs over corpora and exhaustive small boards, trace output,
//! and a text mode where a person plays Staller.

pub mod corpus;
pub mod enumerate;
pub mod interactive;

pub use corpus::{
    applicable_bound, degree_class, emit_trace, exhaustive_small_n, run_corpus, strategy_bound, CorpusConfig,
    CorpusSource, DegreeClass, ExhaustiveMode, GameRecord, Outcome, SizeSummary, VerificationReport,
};
pub use enumerate::{canonical_form, is_valid_board, labeled_graphs, nonisomorphic_graphs};
pub use interactive::{interactive_play, InteractiveOutcome};
