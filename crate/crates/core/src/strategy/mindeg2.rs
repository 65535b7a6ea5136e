//! Dominator strategy for boards of minimum degree at least two, in four
//! phases: separable-set moves, walk sequences, configuration sequences and
//! the reactive circuit endgame.

use std::collections::BTreeSet;

use crate::detect::{
    find_walk_from, max_triple_separation, max_white_separable, white_mask, SeparationCertificate,
    WalkKind,
};
use crate::error::{Error, Result};
use crate::game::{GameState, Player};
use crate::graph::Vertex;
use crate::ledger::{Counters, Ledger};

use super::sequence::{mark_dependents, Goal, SequenceRunner};
use super::{ensure_turn, lowest_legal, DominatorStrategy, PhaseAccounting};

/// What Dominator owes Staller's last move in the endgame.
#[derive(Clone, Debug)]
enum Pending {
    /// Finish a 4-circuit (`k = 4`) or 3-circuit (`k = 3`) Staller entered.
    Circuit { play: Vertex, w: Vec<Vertex>, deplete: Vec<Vertex> },
    Play(Vertex),
}

#[derive(Clone, Debug)]
pub struct MinDeg2Strategy {
    acct: PhaseAccounting,
    cert: SeparationCertificate,
    runner: SequenceRunner,
    phase3_anomalies: Vec<String>,
    pre_closing: Option<Counters>,
    dominated_black_at_t3: bool,
    circuit_failures: Vec<Vertex>,
    nu_t3: usize,
    c_outside: Vec<(usize, Vertex)>,
    opened_endgame: bool,
    pending: Option<Pending>,
    ended_in: Option<u8>,
}

impl MinDeg2Strategy {
    pub fn new(s: &GameState) -> Result<Self> {
        let g = s.graph().ok_or_else(|| Error::Strategy("needs a graph board".into()))?;
        if g.min_degree() < 2 {
            return Err(Error::Strategy(format!(
                "minimum degree is {}, the strategy needs at least 2",
                g.min_degree()
            )));
        }
        let cert = max_triple_separation(g);
        let mut acct = PhaseAccounting::new(false);
        acct.m = cert.len();
        Ok(MinDeg2Strategy {
            acct,
            cert,
            runner: SequenceRunner::new(Goal::MinDeg2Phase2),
            phase3_anomalies: Vec::new(),
            pre_closing: None,
            dominated_black_at_t3: true,
            circuit_failures: Vec::new(),
            nu_t3: 0,
            c_outside: Vec::new(),
            opened_endgame: false,
            pending: None,
            ended_in: None,
        })
    }

    fn phase1_move(&mut self, s: &GameState, ledger: &Ledger) -> Option<Vertex> {
        let stale: Vec<Vertex> = self
            .cert
            .a
            .iter()
            .copied()
            .filter(|&v| s.is_played(v) || self.cert.b[&v].iter().any(|&x| !ledger.is_white(x)))
            .collect();
        for v in stale {
            self.cert.remove(v);
        }
        // The member about to be dominated out of legality goes first.
        let pick = |c: &SeparationCertificate| c.a.iter().copied().filter(|&v| s.is_legal(v)).min_by_key(|&v| (s.gain(v), v));
        if let Some(v) = pick(&self.cert) {
            return Some(v);
        }
        // The kept separation has no playable member left; look for a fresh one
        // among legal vertices.
        let legal: Vec<bool> = (0..s.n()).map(|v| s.is_legal(v)).collect();
        self.cert = max_white_separable(ledger.graph(), &white_mask(ledger), &legal);
        pick(&self.cert)
    }

    fn phase1_observe(&mut self, s: &GameState, ledger: &mut Ledger, by: Player, v: Vertex) -> Result<()> {
        if let Some(triple) = self.cert.b.get(&v).copied() {
            self.cert.remove(v);
            match by {
                Player::Dominator => {
                    for x in triple {
                        ledger.paint_black(s, x)?;
                    }
                }
                Player::Staller => ledger.paint_black(s, triple[0])?,
            }
            return Ok(());
        }
        if by == Player::Dominator {
            self.acct.warn(format!("t={}: Dominator played {v} outside the separation", s.t()));
        }
        let whites = ledger.white_neighbors(v);
        let pick = whites
            .iter()
            .copied()
            .find(|&x| self.cert.owner_of(x).is_none())
            .or_else(|| whites.first().copied());
        if let Some(x) = pick {
            ledger.paint_black(s, x)?;
        }
        Ok(())
    }

    fn close_phase(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<()> {
        let phase = self.acct.phase;
        if phase == 3 {
            self.closing_marks(s, ledger)?;
        }
        self.acct.close_phase(s.t(), ledger.counters(), true);
        match phase {
            1 => {
                ledger.paint_all_dominated(s)?;
                ledger.deplete_all_eligible(s)?;
            }
            2 => {
                self.acct.a_certificate = SeparationCertificate::default();
                let done = std::mem::replace(&mut self.runner, SequenceRunner::new(Goal::MinDeg2Phase3));
                self.acct.warnings.extend(done.anomalies.iter().map(|a| format!("phase 2: {a}")));
            }
            3 => self.open_endgame(s, ledger),
            _ => {}
        }
        Ok(())
    }

    /// Closing marks of the third phase: neighbors of undominated neighbors of
    /// dependent vertices become dependent too.
    fn closing_marks(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<()> {
        self.phase3_anomalies = std::mem::take(&mut self.runner.anomalies);
        self.pre_closing = Some(ledger.counters());
        self.dominated_black_at_t3 = (0..s.n()).all(|v| !ledger.is_dominated(v) || !ledger.is_white(v));
        let g = ledger.graph().clone();
        let mut want = BTreeSet::new();
        for v in g.vertices().filter(|&v| ledger.is_dependent(v)) {
            for &w in g.neighbors(v) {
                if ledger.is_white(w) && !ledger.is_dominated(w) {
                    want.extend(g.neighbors(w).iter().copied().filter(|&x| !ledger.is_dependent(x)));
                }
            }
        }
        let want: Vec<Vertex> = want.into_iter().collect();
        mark_dependents(s, ledger, &mut self.acct, &want, "closing marks")?;
        Ok(())
    }

    fn open_endgame(&mut self, s: &GameState, ledger: &Ledger) {
        let g = ledger.graph();
        let white = white_mask(ledger);
        self.acct.c_set = (0..s.n()).filter(|&v| ledger.white_degree(v) == 1).collect();
        self.nu_t3 = ledger.nu();
        for v in g.vertices().filter(|&v| ledger.white_degree(v) == 2) {
            let inside = find_walk_from(g, &white, 3, WalkKind::Circuit, v).is_some()
                || find_walk_from(g, &white, 4, WalkKind::Circuit, v).is_some();
            if !inside {
                self.circuit_failures.push(v);
            }
        }
    }

    fn endgame_move(&mut self, s: &GameState, ledger: &Ledger) -> Result<Vertex> {
        if !self.opened_endgame {
            self.opened_endgame = true;
            if let Some(&v) = self.acct.c_set.iter().find(|&&v| s.is_legal(v)) {
                return Ok(v);
            }
            return self.two_white_move(s, ledger);
        }
        match self.pending.clone() {
            Some(Pending::Circuit { play, .. }) | Some(Pending::Play(play)) if s.is_legal(play) => Ok(play),
            pending => {
                if pending.is_some() {
                    self.acct.warn(format!("t={}: planned endgame reply is illegal", s.t()));
                    self.pending = None;
                }
                if let Some(v) = (0..s.n()).find(|&v| ledger.white_degree(v) == 1 && s.is_legal(v)) {
                    return Ok(v);
                }
                self.two_white_move(s, ledger)
            }
        }
    }

    fn two_white_move(&mut self, s: &GameState, ledger: &Ledger) -> Result<Vertex> {
        match (0..s.n()).find(|&v| ledger.white_degree(v) == 2 && s.is_legal(v)) {
            Some(v) => Ok(v),
            None => {
                self.acct.warn(format!("t={}: no endgame move with two white neighbors", s.t()));
                lowest_legal(s)
            }
        }
    }

    /// Paint the single white neighbor `w` of a move in `C`, then deplete
    /// what `w` frees up.
    fn single_white_move(&mut self, s: &GameState, ledger: &mut Ledger, w: Vertex) -> Result<()> {
        ledger.paint_black(s, w)?;
        let g = ledger.graph().clone();
        for &x in g.neighbors(w) {
            if ledger.can_deplete(x) {
                ledger.mark_depleted(s, x)?;
            }
        }
        Ok(())
    }

    fn endgame_observe(&mut self, s: &GameState, ledger: &mut Ledger, by: Player, v: Vertex) -> Result<()> {
        let whites = ledger.white_neighbors(v);
        if self.acct.c_set.contains(&v) {
            self.acct.b += 1;
        }
        match by {
            Player::Dominator => match self.pending.take() {
                Some(Pending::Circuit { play, w, deplete }) if play == v => {
                    for x in w {
                        ledger.paint_black(s, x)?;
                    }
                    for x in deplete {
                        if ledger.can_deplete(x) {
                            ledger.mark_depleted(s, x)?;
                        } else if !ledger.is_depleted(x) {
                            self.acct.warn(format!("t={}: circuit vertex {x} cannot be depleted", s.t()));
                        }
                    }
                }
                _ if whites.len() == 1 => self.single_white_move(s, ledger, whites[0])?,
                _ => {}
            },
            Player::Staller => {
                if whites.len() >= 2 {
                    let g = ledger.graph();
                    let white = white_mask(ledger);
                    if let Some(c) = find_walk_from(g, &white, 4, WalkKind::Circuit, v) {
                        self.acct.a += 1;
                        self.pending = Some(Pending::Circuit {
                            play: c.v[2],
                            w: c.w.clone(),
                            deplete: vec![c.v[1], c.v[3]],
                        });
                    } else if let Some(c) = find_walk_from(g, &white, 3, WalkKind::Circuit, v) {
                        self.acct.a += 1;
                        self.pending = Some(Pending::Circuit {
                            play: c.v[1],
                            w: c.w.clone(),
                            deplete: vec![c.v[2]],
                        });
                    } else {
                        self.acct.warn(format!("t={}: Staller's {v} lies in no 3- or 4-circuit", s.t()));
                        self.pending = None;
                    }
                } else if whites.len() == 1 {
                    self.single_white_move(s, ledger, whites[0])?;
                    let next = (0..s.n()).find(|&u| ledger.white_degree(u) == 1 && s.is_legal(u));
                    self.pending = next.map(Pending::Play);
                }
            }
        }
        let t = s.t();
        for u in (0..s.n()).filter(|&u| ledger.white_degree(u) == 1) {
            if !self.acct.c_set.contains(&u) && !self.c_outside.iter().any(|&(_, x)| x == u) {
                self.c_outside.push((t, u));
            }
        }
        Ok(())
    }

    fn check_claims(&mut self, n: usize, played_dependents: usize) {
        let a = &self.acct;
        let (t1, t2, t3, t4) = (a.big_t(1), a.big_t(2), a.big_t(3), a.big_t(4));
        let (c1, c2, c3, c4) = (a.at(1), a.at(2), a.at(3), a.at(4));
        let pc = self.pre_closing.unwrap_or(c3);
        let m = a.m;
        let (aa, bb) = (a.a, a.b);
        let ended_in_1 = self.ended_in == Some(1);
        let i = |x: usize| x as i64;
        let mut claims: Vec<(u8, &str, bool, String)> = vec![
            (1, "2*beta(t1) >= 4*T1", 2 * c1.beta >= 4 * t1, format!("beta(t1)={}, T1={t1}", c1.beta)),
            (
                1,
                "T1 >= M",
                t1 >= m || ended_in_1,
                format!("T1={t1}, M={m}{}", if ended_in_1 { ", game ended in phase 1" } else { "" }),
            ),
            (1, "no dependent at t1", c1.sigma == 0, format!("sigma(t1)={}", c1.sigma)),
            (
                2,
                "2*(beta(t2)-beta(t1)) >= 3*T2",
                2 * (c2.beta - c1.beta) >= 3 * t2,
                format!("beta(t1)={}, beta(t2)={}, T2={t2}", c1.beta, c2.beta),
            ),
            (2, "4*delta(t2) >= T2", 4 * c2.delta >= t2, format!("delta(t2)={}, T2={t2}", c2.delta)),
            (2, "no dependent at t2", c2.sigma == 0, format!("sigma(t2)={}", c2.sigma)),
            (
                3,
                "2*(beta(t3)-beta(t2)) >= 3*T3",
                2 * (pc.beta - c2.beta) >= 3 * t3,
                format!("beta(t2)={}, beta(t3)={}, T3={t3}", c2.beta, pc.beta),
            ),
            (
                3,
                "4*(delta(t3)-delta(t2)) + chi(t3) >= T3",
                4 * (i(pc.delta) - i(c2.delta)) + pc.chi >= i(t3),
                format!("delta(t2)={}, delta(t3)={}, chi(t3)={}, T3={t3}", c2.delta, pc.delta, pc.chi),
            ),
            (
                3,
                "2*nu(t3) <= chi(t3) + M",
                2 * i(pc.nu) <= pc.chi + i(m),
                format!("nu(t3)={}, chi(t3)={}, M={m}", pc.nu, pc.chi),
            ),
            (3, "dominated vertices black at t3", self.dominated_black_at_t3, String::new()),
            (
                3,
                "sequence structure present",
                self.phase3_anomalies.is_empty(),
                self.phase3_anomalies.join("; "),
            ),
            (3, "nu(t3) <= chi(t3) after closing marks", i(c3.nu) <= c3.chi, format!("nu={}, chi={}", c3.nu, c3.chi)),
            (
                3,
                "two white neighbors implies 3- or 4-circuit at t3",
                self.circuit_failures.is_empty(),
                format!("{:?}", self.circuit_failures),
            ),
            (4, "T4 <= 2a+b+1", t4 <= 2 * aa + bb + 1, format!("T4={t4}, a={aa}, b={bb}")),
            (
                4,
                "beta(t4)-beta(t3) >= 3a+b",
                c4.beta - c3.beta >= 3 * aa + bb,
                format!("beta(t3)={}, beta(t4)={}, a={aa}, b={bb}", c3.beta, c4.beta),
            ),
            (
                4,
                "delta(t4)-delta(t3) >= a+b-nu(t3)",
                i(c4.delta) - i(c3.delta) >= i(aa + bb) - i(self.nu_t3),
                format!("delta(t3)={}, delta(t4)={}, nu(t3)={}", c3.delta, c4.delta, self.nu_t3),
            ),
            (4, "C(t) subset of C(t3)", self.c_outside.is_empty(), format!("{:?}", self.c_outside)),
            (4, "no new dependents", c4.sigma == c3.sigma, format!("sigma {} -> {}", c3.sigma, c4.sigma)),
        ];
        let total = t1 + t2 + t3 + t4;
        claims.push((
            0,
            "4*T1 + 3*T2 + 3*T3 + 6a + 2b <= 2n",
            4 * t1 + 3 * t2 + 3 * t3 + 6 * aa + 2 * bb <= 2 * n,
            format!("n={n}"),
        ));
        claims.push((
            0,
            "T + delta + chi <= n",
            i(total) + i(c4.delta) + c4.chi <= i(n),
            format!("T={total}, delta={}, chi={}, played dependents={played_dependents}", c4.delta, c4.chi),
        ));
        for (phase, name, holds, detail) in claims {
            self.acct.claim(phase, name, holds, detail);
        }
    }
}

impl DominatorStrategy for MinDeg2Strategy {
    fn name(&self) -> &'static str {
        "mindeg2"
    }

    fn choose(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<Vertex> {
        ensure_turn(s, Player::Dominator)?;
        loop {
            let next = match self.acct.phase {
                1 => self.phase1_move(s, ledger),
                2 | 3 => self.runner.turn(s, ledger, &mut self.acct)?,
                _ => return self.endgame_move(s, ledger),
            };
            match next {
                Some(v) => return Ok(v),
                None => self.close_phase(s, ledger)?,
            }
        }
    }

    fn observe(&mut self, s: &GameState, ledger: &mut Ledger, by: Player, v: Vertex) -> Result<()> {
        ledger.sync(s)?;
        match self.acct.phase {
            1 => self.phase1_observe(s, ledger, by, v),
            2 | 3 => self.runner.after_move(s, ledger, &mut self.acct, by),
            _ => self.endgame_observe(s, ledger, by, v),
        }
    }

    fn finish(&mut self, s: &GameState, ledger: &mut Ledger) -> Result<()> {
        if !s.is_terminal() {
            return Err(Error::Strategy("finish called before the game ended".into()));
        }
        self.runner.abandon();
        let phase = self.acct.phase;
        self.ended_in = Some(phase);
        ledger.paint_all_dominated(s)?;
        ledger.deplete_all_eligible(s)?;
        if phase == 3 {
            self.closing_marks(s, ledger)?;
        }
        self.acct.close_phase(s.t(), ledger.counters(), true);
        self.acct.pad_to(4, s.t(), ledger.counters());
        self.check_claims(s.n(), ledger.played_dependents(s));
        Ok(())
    }

    fn accounting(&self) -> &PhaseAccounting {
        &self.acct
    }
}
