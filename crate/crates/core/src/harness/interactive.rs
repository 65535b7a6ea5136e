use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph::Graph;
use crate::ledger::LedgerEvent;
use crate::strategy::{GameSession, GameTrace, StrategyKind};

pub struct InteractiveOutcome {
    pub trace: GameTrace,
    /// Input ended before the game did; the trace is partial.
    pub aborted: bool,
}

/// A human plays Staller on `input`; prompts, ledger events and phase
/// changes go to `output`. Bad input is re-prompted.
pub fn interactive_play<R: BufRead, W: Write>(
    g: &Graph,
    strategy: StrategyKind,
    mut input: R,
    mut output: W,
) -> Result<InteractiveOutcome> {
    let mut session = GameSession::new(g, strategy)?;
    let mut seen_events = 0;
    let mut phase = session.phase();
    writeln!(output, "{strategy} Dominator on n = {}; you are Staller.", g.n())?;
    while !session.is_over() {
        let by = session.state().mover();
        match by {
            Player::Dominator => {
                let v = session.dominator_move()?;
                writeln!(output, "Dominator plays {v}")?;
            }
            Player::Staller => {
                let Some(v) = prompt(&session, &mut input, &mut output)? else {
                    writeln!(output, "input ended; game aborted after {} moves", session.state().t())?;
                    return Ok(InteractiveOutcome { trace: session.partial_trace("human".into()), aborted: true });
                };
                session.staller_move(v)?;
            }
        }
        let log = session.ledger().log();
        for r in &log[seen_events..] {
            match r.event {
                LedgerEvent::Move { .. } => {}
                LedgerEvent::Paint { vertex } => writeln!(output, "  paint {vertex} black")?,
                LedgerEvent::Depleted { vertex } => writeln!(output, "  mark {vertex} depleted")?,
                LedgerEvent::Dependent { vertex } => writeln!(output, "  mark {vertex} dependent")?,
            }
        }
        seen_events = log.len();
        if session.phase() != phase {
            phase = session.phase();
            writeln!(output, "  now in phase {phase}")?;
        }
    }
    let trace = session.finish("human".into())?;
    let moves = trace.total_moves();
    writeln!(output, "game over after {moves} moves")?;
    for v in trace.verdicts.iter().filter(|v| v.applicable) {
        let word = match (v.pass, v.tight) {
            (true, true) => "pass (tight)",
            (true, false) => "pass",
            (false, _) => "FAIL",
        };
        writeln!(output, "bound {} = {}: {word}", v.name, v.bound)?;
    }
    Ok(InteractiveOutcome { trace, aborted: false })
}

/// Reads until a legal vertex is entered; `None` on end of input.
fn prompt<R: BufRead, W: Write>(session: &GameSession, input: &mut R, output: &mut W) -> Result<Option<usize>> {
    let s = session.state();
    loop {
        write!(output, "Staller move (legal: {:?})> ", s.legal_moves())?;
        output.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        let reply = match line.trim().parse::<usize>() {
            Err(_) => format!("'{}' is not a vertex number", line.trim()),
            Ok(v) if v >= s.n() => format!("{}", Error::VertexOutOfRange { vertex: v, n: s.n() }),
            Ok(v) if s.is_played(v) => format!("{v} was already played"),
            Ok(v) if !s.is_legal(v) => format!("{v} dominates no new vertex"),
            Ok(v) => return Ok(Some(v)),
        };
        writeln!(output, "{reply}; try again")?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn path_four_human_plays_leaf() {
        let g = generate(&GeneratorSpec::Path(4)).unwrap();
        let mut out = Vec::new();
        let res = interactive_play(&g, StrategyKind::General, "x\n9\n0\n".as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(!res.aborted);
        assert_eq!(res.trace.moves[0].vertex, 1);
        assert_eq!(res.trace.total_moves(), 3);
        assert!(text.contains("not a vertex number"));
        assert!(text.contains("out of range") || text.contains("9"));
        assert!(text.contains("bound 3n/4 = 3: pass (tight)"), "{text}");
    }

    #[test]
    fn end_of_input_aborts() {
        let g = generate(&GeneratorSpec::Cycle(7)).unwrap();
        let res = interactive_play(&g, StrategyKind::MinDeg2, "".as_bytes(), Vec::new()).unwrap();
        assert!(res.aborted);
        assert_eq!(res.trace.total_moves(), 1);
    }
}
