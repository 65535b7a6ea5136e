//! Two- and four-move Dominator sequences driven by walks and white
//! configurations. One runner serves the second and third phases of the
//! minimum-degree-2 strategy and the fifth phase of the general strategy; they
//! differ only in which structures are searched and which outcome counts.
//!
//! Every move is followed by painting all dominated vertices and depleting
//! everything the rules allow. Both only ever raise `beta` and `delta`, so the
//! outcome checks stay sound.

use crate::detect::{
    find_phase3_configuration_in, find_walk_in, ConfigTag, Phase3Config, Walk, WalkKind,
};
use crate::error::Result;
use crate::game::{GameState, Player};
use crate::graph::Vertex;
use crate::ledger::{Counters, Ledger};

use super::{lowest_legal, PhaseAccounting};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    MinDeg2Phase2,
    MinDeg2Phase3,
    GeneralPhase5,
}

#[derive(Clone, Debug)]
pub(crate) enum SeqCase {
    SixWalk(Walk),
    TwoCircuit(Walk),
    Terminal(Walk),
    Config(Phase3Config),
    FiveCircuit(Walk),
    ThreeCircuit(Walk),
    FourCircuit(Walk),
    /// No structure the proof expects was found; play `v` and rely on the
    /// generic second-move search.
    Fallback(Vertex),
}

impl SeqCase {
    fn first_move(&self) -> Vertex {
        match self {
            SeqCase::SixWalk(w)
            | SeqCase::TwoCircuit(w)
            | SeqCase::Terminal(w)
            | SeqCase::FiveCircuit(w)
            | SeqCase::ThreeCircuit(w)
            | SeqCase::FourCircuit(w) => w.v[0],
            SeqCase::Config(c) => match c.tag {
                ConfigTag::BothAdjW3 | ConfigTag::SharedY => c.v[0],
                ConfigTag::AEqualsU | ConfigTag::AEqualsW3 => c.x[1].expect("x2"),
                ConfigTag::DistinctY => c.v[2],
            },
            SeqCase::Fallback(v) => *v,
        }
    }

    fn label(&self) -> String {
        match self {
            SeqCase::SixWalk(_) => "6-walk".into(),
            SeqCase::TwoCircuit(_) => "2-circuit".into(),
            SeqCase::Terminal(_) => "terminal walk".into(),
            SeqCase::Config(c) => format!("{:?} configuration", c.tag),
            SeqCase::FiveCircuit(w) if w.kind == WalkKind::Circuit => "5-circuit".into(),
            SeqCase::FiveCircuit(_) => "5-walk".into(),
            SeqCase::ThreeCircuit(_) => "3-circuit".into(),
            SeqCase::FourCircuit(_) => "4-circuit".into(),
            SeqCase::Fallback(v) => format!("fallback at {v}"),
        }
    }

    /// Dominator's second move as the proof suggests, given Staller's reply.
    fn suggestions(&self, ledger: &Ledger, reply: Vertex) -> Vec<Vertex> {
        let adj = |a: Vertex, b: Vertex| ledger.graph().is_adjacent(a, b);
        match self {
            SeqCase::SixWalk(w) => {
                if adj(reply, w.w[2]) {
                    vec![w.v[3]]
                } else if adj(reply, w.w[3]) {
                    vec![w.v[4]]
                } else {
                    vec![w.v[2]]
                }
            }
            SeqCase::FiveCircuit(w) => {
                if reply == w.v[1] {
                    vec![w.v[3]]
                } else {
                    vec![w.v[2]]
                }
            }
            SeqCase::FourCircuit(w) => vec![w.v[2]],
            SeqCase::Config(c) => {
                let [x1, x2, x3] = c.x;
                match c.tag {
                    ConfigTag::BothAdjW3 => x2.into_iter().collect(),
                    ConfigTag::AEqualsU => vec![c.v[0], c.v[2]],
                    ConfigTag::AEqualsW3 => {
                        if reply == c.v[1] {
                            x1.into_iter().collect()
                        } else if Some(reply) == c.z {
                            vec![c.v[0]]
                        } else {
                            vec![c.v[2]]
                        }
                    }
                    ConfigTag::DistinctY => [x1, x2].into_iter().flatten().collect(),
                    ConfigTag::SharedY => [x2, x3].into_iter().flatten().collect(),
                }
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
struct Sequence {
    case: SeqCase,
    start: Counters,
    start_a: usize,
    d_moves: u8,
}

#[derive(Clone, Copy, Debug, Default)]
struct Delta {
    beta: i64,
    delta: i64,
    nu: i64,
    chi: i64,
}

fn diff(a: Counters, b: Counters) -> Delta {
    Delta {
        beta: b.beta as i64 - a.beta as i64,
        delta: b.delta as i64 - a.delta as i64,
        nu: b.nu as i64 - a.nu as i64,
        chi: b.chi - a.chi,
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SequenceRunner {
    goal: Goal,
    open: Option<Sequence>,
    pub sequences: usize,
    /// Turns where the phase was not over but no structure the proof
    /// promises could be found.
    pub anomalies: Vec<String>,
}

impl SequenceRunner {
    pub fn new(goal: Goal) -> Self {
        SequenceRunner { goal, open: None, sequences: 0, anomalies: Vec::new() }
    }

    /// The game ended mid-sequence.
    pub fn abandon(&mut self) {
        self.open = None;
    }

    /// Paint and deplete after any move; the general 3-circuit case also
    /// marks its two dependents here.
    pub fn after_move(
        &mut self,
        s: &GameState,
        ledger: &mut Ledger,
        acct: &mut PhaseAccounting,
        by: Player,
    ) -> Result<()> {
        ledger.paint_all_dominated(s)?;
        if let (Player::Dominator, Some(seq)) = (by, &self.open) {
            if let (SeqCase::ThreeCircuit(w), 1) = (&seq.case, seq.d_moves) {
                let want = [w.v[1], w.v[2]];
                mark_dependents(s, ledger, acct, &want, "3-circuit")?;
            }
        }
        ledger.deplete_all_eligible(s)?;
        Ok(())
    }

    /// Dominator's move, or `None` once no sequence applies and the phase is
    /// over.
    pub fn turn(
        &mut self,
        s: &GameState,
        ledger: &mut Ledger,
        acct: &mut PhaseAccounting,
    ) -> Result<Option<Vertex>> {
        if let Some(mut seq) = self.open.take() {
            if seq.d_moves == 1 {
                if let Some(v) = self.second_move(&mut seq, s, ledger, acct)? {
                    seq.d_moves = 2;
                    self.open = Some(seq);
                    return Ok(Some(v));
                }
            } else {
                let d = diff(seq.start, ledger.counters());
                let ok = d.beta >= 6 && d.delta >= 1 && (self.goal != Goal::MinDeg2Phase3 || d.nu <= 0);
                if !ok {
                    acct.warn(format!(
                        "t={}: {} sequence ended short over four moves ({d:?})",
                        s.t(),
                        seq.case.label()
                    ));
                }
            }
        }
        let Some(case) = self.detect(ledger, acct) else {
            return Ok(None);
        };
        let mut first = case.first_move();
        if !s.is_legal(first) {
            acct.warn(format!("t={}: {} opens with illegal {first}", s.t(), case.label()));
            first = lowest_legal(s)?;
        }
        self.sequences += 1;
        self.open = Some(Sequence {
            case,
            start: ledger.counters(),
            start_a: acct.a_certificate.len(),
            d_moves: 1,
        });
        Ok(Some(first))
    }

    fn short_outcome(&self, seq: &Sequence, ledger: &Ledger, acct: &PhaseAccounting) -> bool {
        let d = diff(seq.start, ledger.counters());
        match self.goal {
            Goal::MinDeg2Phase2 => d.beta >= 3 && d.delta >= 1,
            Goal::MinDeg2Phase3 => {
                let grew = acct.a_certificate.len() >= seq.start_a + 2;
                d.beta >= 3
                    && ((d.delta >= 1 && d.nu <= 0)
                        || (d.chi >= 2 && d.nu <= 1)
                        || (d.chi >= 2 && d.nu <= 2 && grew))
            }
            Goal::GeneralPhase5 => d.beta >= 3 && d.delta + d.chi >= 1,
        }
    }

    /// After Staller's reply: either the sequence is already complete (`None`)
    /// or Dominator needs a second move.
    fn second_move(
        &mut self,
        seq: &mut Sequence,
        s: &GameState,
        ledger: &mut Ledger,
        acct: &mut PhaseAccounting,
    ) -> Result<Option<Vertex>> {
        if self.short_outcome(seq, ledger, acct) {
            return Ok(None);
        }
        let reply = *s.moves().last().expect("Staller replied");
        if self.dependent_branch(seq, reply, s, ledger, acct)? && self.short_outcome(seq, ledger, acct) {
            return Ok(None);
        }
        let suggested = seq.case.suggestions(ledger, reply);
        let candidates = suggested.iter().copied().chain(0..s.n());
        for m in candidates {
            if s.is_legal(m) && self.second_move_works(seq, m, s, ledger)? {
                return Ok(Some(m));
            }
        }
        let m = suggested.into_iter().find(|&m| s.is_legal(m)).map_or_else(|| lowest_legal(s), Ok)?;
        acct.warn(format!(
            "t={}: {} sequence has no second move meeting the bound, playing {m}",
            s.t(),
            seq.case.label()
        ));
        Ok(Some(m))
    }

    fn second_move_works(&self, seq: &Sequence, m: Vertex, s: &GameState, ledger: &Ledger) -> Result<bool> {
        let mut s2 = s.clone();
        s2.play(m)?;
        let mut l2 = ledger.clone();
        l2.paint_all_dominated(&s2)?;
        l2.deplete_all_eligible(&s2)?;
        let d = diff(seq.start, l2.counters());
        Ok(d.beta >= 5 && d.delta >= 1 && (self.goal != Goal::MinDeg2Phase3 || d.nu <= 0))
    }

    /// The proof's dependent-marking continuations. Returns whether one fired.
    fn dependent_branch(
        &mut self,
        seq: &Sequence,
        reply: Vertex,
        s: &GameState,
        ledger: &mut Ledger,
        acct: &mut PhaseAccounting,
    ) -> Result<bool> {
        let g = ledger.graph().clone();
        match &seq.case {
            SeqCase::Config(c) => {
                let [v1, v2, v3] = c.v;
                let [x1, x2, x3] = c.x;
                match c.tag {
                    ConfigTag::BothAdjW3 if reply == v2 => {
                        let want: Vec<Vertex> = [x1, x2, Some(v3)].into_iter().flatten().collect();
                        mark_dependents(s, ledger, acct, &want, "configuration")?;
                        Ok(true)
                    }
                    ConfigTag::AEqualsU if Some(reply) == x1 => {
                        let want: Vec<Vertex> = [Some(v1), Some(v2), Some(v3), c.z].into_iter().flatten().collect();
                        mark_dependents(s, ledger, acct, &want, "configuration")?;
                        Ok(true)
                    }
                    ConfigTag::SharedY if Some(reply) == x1 => {
                        let want: Vec<Vertex> = [Some(v2), Some(v3), x2, x3].into_iter().flatten().collect();
                        mark_dependents(s, ledger, acct, &want, "configuration")?;
                        let (Some(y), Some(x1), Some(x2), Some(x3)) = (c.y, x1, x2, x3) else {
                            return Ok(true);
                        };
                        let mut next = acct.a_certificate.clone();
                        if next.try_insert(c.u, [v1, v2, v3]) && next.try_insert(y, [x1, x2, x3]) {
                            acct.a_certificate = next;
                        } else {
                            acct.warn(format!("t={}: shared-y triples overlap the separation", s.t()));
                        }
                        Ok(true)
                    }
                    _ => Ok(false),
                }
            }
            SeqCase::FourCircuit(w) => {
                let want = if g.is_adjacent(reply, w.w[2]) {
                    [w.v[2], w.v[3]]
                } else if g.is_adjacent(reply, w.w[3]) {
                    [w.v[1], w.v[2]]
                } else {
                    return Ok(false);
                };
                mark_dependents(s, ledger, acct, &want, "4-circuit")?;
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn detect(&mut self, ledger: &Ledger, acct: &mut PhaseAccounting) -> Option<SeqCase> {
        let t = ledger.log().last().map_or(0, |r| r.t);
        let mut anomaly = |msg: String| {
            acct.warn(msg.clone());
            self.anomalies.push(msg);
        };
        let phase2 = || {
            find_walk_in(ledger, 6, WalkKind::Walk)
                .map(SeqCase::SixWalk)
                .or_else(|| find_walk_in(ledger, 2, WalkKind::Circuit).map(SeqCase::TwoCircuit))
                .or_else(|| find_walk_in(ledger, 2, WalkKind::Terminal).map(SeqCase::Terminal))
        };
        let phase3 = |anomaly: &mut dyn FnMut(String)| {
            if let Some(w) = find_walk_in(ledger, 2, WalkKind::Terminal) {
                return Some(SeqCase::Terminal(w));
            }
            if let Some(c) = find_phase3_configuration_in(ledger) {
                return Some(SeqCase::Config(c));
            }
            if let Some(w) = find_walk_in(ledger, 5, WalkKind::Circuit) {
                return Some(SeqCase::FiveCircuit(w));
            }
            if let Some(w) = find_walk_in(ledger, 5, WalkKind::Walk) {
                anomaly(format!("t={t}: 5-walk that is not a 5-circuit"));
                return Some(SeqCase::FiveCircuit(w));
            }
            if let Some(v) = high_degree_two_walk(ledger) {
                anomaly(format!("t={t}: white vertex of degree > 2 in a 2-walk matches no configuration"));
                return Some(SeqCase::Fallback(v));
            }
            None
        };
        match self.goal {
            Goal::MinDeg2Phase2 => phase2(),
            Goal::MinDeg2Phase3 => phase3(&mut anomaly),
            Goal::GeneralPhase5 => {
                if let Some(c) = phase2().or_else(|| phase3(&mut anomaly)) {
                    return Some(c);
                }
                if let Some(w) = find_walk_in(ledger, 3, WalkKind::Circuit) {
                    return Some(SeqCase::ThreeCircuit(w));
                }
                if let Some(w) = find_walk_in(ledger, 4, WalkKind::Circuit) {
                    return Some(SeqCase::FourCircuit(w));
                }
                let v = (0..ledger.n()).find(|&v| ledger.white_degree(v) >= 2)?;
                anomaly(format!("t={t}: vertex {v} has two white neighbors but lies in no short circuit"));
                Some(SeqCase::Fallback(v))
            }
        }
    }
}

/// A neighbor `v1` of a white vertex `u` of degree above two such that `u`
/// sits in a 2-walk through `v1`: `v1` has a second white neighbor.
fn high_degree_two_walk(ledger: &Ledger) -> Option<Vertex> {
    let g = ledger.graph();
    for u in g.vertices() {
        if !ledger.is_white(u) || g.degree(u) <= 2 {
            continue;
        }
        for &v1 in g.neighbors(u) {
            if ledger.white_degree(v1) >= 2 {
                return Some(v1);
            }
        }
    }
    None
}

pub(crate) fn mark_dependents(
    s: &GameState,
    ledger: &mut Ledger,
    acct: &mut PhaseAccounting,
    want: &[Vertex],
    why: &str,
) -> Result<usize> {
    let mut marked = 0;
    for &v in want {
        if ledger.is_dependent(v) {
            continue;
        }
        if ledger.can_mark_dependent(v) {
            ledger.mark_dependent(s, v)?;
            marked += 1;
        } else {
            acct.warn(format!("t={}: {why}: cannot mark {v} dependent", s.t()));
        }
    }
    Ok(marked)
}
