//! The series program on a run of edges, shared by the path and cycle
//! breakers. Coordinates along the run are `1..=n`; position `0` stands for
//! the left end, which is either a path end or an anchoring red component.

use super::heuristics::fewest_replies;
use super::series::{ceil_log2, phi, distinctive, free_arc, Board, Phase, Phase2, Phase2Move, SeriesLedger, SeriesRecord};
use crate::error::{Error, Result};
use crate::game::GameView;

/// Closed interval of run coordinates.
type Span = (usize, usize);

fn gap(x: Span, y: Span) -> usize {
    // vertex distance between x on the left and y on the right
    (y.0 - 1).saturating_sub(x.1)
}

fn between(z: Span, x: Span, y: Span) -> bool {
    x.1 < z.0 && z.1 < y.0
}

/// Phase-two length budget for anchored runs: `t'` when it covers the
/// expected number of halvings, else the least budget whose series sizes
/// avoid every red size already on the board.
fn phase2_budget(t_prime: usize, d0: usize, board: &Board) -> usize {
    let need = ceil_log2(d0.max(1)) + 2;
    if t_prime >= need {
        return t_prime;
    }
    let used: Vec<usize> = board.red.iter().map(|c| c.size()).collect();
    (need..).find(|&b| (1..need).all(|j| !used.contains(&(b - j)))).expect("unbounded search")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    First,
    Right,
    Left,
    /// Away from the anchor, pairing with it at the end.
    Away,
}

enum Step {
    Start,
    Await { j: usize },
    Grow { j: usize, f: usize, case: Case, done: bool },
    Two(Box<Phase2>),
    Exited,
    Fallback,
}

pub(crate) struct LineSetup {
    /// Graph edges in run order.
    pub run: Vec<usize>,
    pub t: usize,
    pub strict: bool,
    /// Whether a first reply right of the start flips the run.
    pub allow_mirror: bool,
    /// Coordinate of the first series' start.
    pub first: usize,
    /// An edge of the red component at position `0`, if any.
    pub anchor: Option<usize>,
    /// Series already played before this run.
    pub offset: usize,
    /// Declare a pair only once it is distinctive.
    pub relaxed: bool,
    /// Stop after the first series if `B` answers at the mirrored start.
    pub mirror_exit: bool,
    /// Edge count of the whole graph.
    pub total: usize,
}

pub(crate) enum LineMove {
    Play(usize),
    Exit,
}

pub(crate) struct Line {
    setup: LineSetup,
    n: usize,
    index: Vec<Option<usize>>,
    mirrored: bool,
    comps: Vec<Span>,
    step: Step,
    pub ledger: SeriesLedger,
}

impl Line {
    pub fn new(setup: LineSetup, ledger: SeriesLedger) -> Self {
        let n = setup.run.len();
        let mut index = vec![None; setup.total];
        for (i, &e) in setup.run.iter().enumerate() {
            index[e] = Some(i + 1);
        }
        Line { setup, n, index, mirrored: false, comps: Vec::new(), step: Step::Start, ledger }
    }

    pub fn anchor(&self) -> Option<usize> {
        self.setup.anchor
    }

    fn edge(&self, p: usize) -> usize {
        let p = if self.mirrored { self.n + 1 - p } else { p };
        self.setup.run[p - 1]
    }

    fn coord(&self, e: usize) -> Option<usize> {
        let p = self.index[e]?;
        Some(if self.mirrored { self.n + 1 - p } else { p })
    }

    fn phi(&self, x: usize) -> usize {
        phi(self.n, x)
    }

    /// `A_p` for `0 <= p <= comps.len()`.
    fn a(&self, p: usize) -> Span {
        if p == 0 { (1, 0) } else { self.comps[p - 1] }
    }

    fn blue_spans(&self, view: &GameView<'_>) -> Vec<Span> {
        Board::new(view)
            .blue
            .iter()
            .filter_map(|c| {
                let ps: Option<Vec<usize>> = c.edges.iter().map(|&e| self.coord(e)).collect();
                let ps = ps?;
                Some((*ps.iter().min()?, *ps.iter().max()?))
            })
            .collect()
    }

    /// `A'_p`, matched by size among blue components inside the run.
    fn blue_of(&self, blue: &[Span], p: usize) -> Option<Span> {
        let size = self.comps[p - 1].1 - self.comps[p - 1].0 + 1;
        let mut it = blue.iter().filter(|s| s.1 - s.0 + 1 == size);
        let first = *it.next()?;
        it.next().is_none().then_some(first)
    }

    /// `q` with `A'_m` between `A_{q-1}` and `A_q`.
    fn q_of(&self, blue: &[Span], m: usize) -> Option<usize> {
        let z = self.blue_of(blue, m)?;
        (1..=m).find(|&q| between(z, self.a(q - 1), self.a(q)))
    }

    fn condition4(&self, blue: &[Span], m: usize) -> bool {
        let Some(q) = self.q_of(blue, m) else { return false };
        let Some(bs) = (q..=m).map(|p| self.blue_of(blue, p)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let (lo, hi) = (self.a(q - 1), self.a(q));
        if !bs.iter().all(|&z| between(z, lo, hi)) {
            return false;
        }
        let up = bs.windows(2).all(|w| w[0].1 < w[1].0);
        let down = bs.windows(2).all(|w| w[1].1 < w[0].0);
        if !(up || down) {
            return false;
        }
        bs.windows(2).enumerate().all(|(i, w)| {
            let p = q + i + 1;
            let d = if up { gap(w[0], w[1]) } else { gap(w[1], w[0]) };
            d == gap(self.a(p - 1), self.a(p))
        })
    }

    fn conditions(&self, view: &GameView<'_>, blue: &[Span], m: usize) -> Vec<(&'static str, bool)> {
        let f_m = self.comps[m - 1].1;
        let sizes: Vec<usize> = self.comps.iter().map(|c| c.1 - c.0 + 1).collect();
        vec![
            ("condition0", sizes.windows(2).all(|w| w[1] < w[0])),
            ("condition1", self.n - f_m > 2),
            ("condition2", (f_m + 1..=self.n).all(|p| view.is_free(self.edge(p)))),
            ("condition3", self.comps.iter().all(|c| c.0 <= c.1) && self.comps.windows(2).all(|w| w[0].1 < w[1].0)),
            ("condition4", self.condition4(blue, m)),
            ("condition5", (2..=m).all(|p| self.n - (self.comps[p - 1].0 - 1) > gap(self.a(p - 1), self.a(p)))),
        ]
    }

    fn case1_end(&self, j: usize, s: usize) -> (usize, &'static str) {
        let n = self.n as i64;
        let (t, j, s) = (self.setup.t as i64, j as i64, s as i64);
        if n - (s - 1) <= t - j {
            return (self.n, "rule 1");
        }
        let f = s + t - j - 1;
        if f <= n && n - (self.phi(f as usize) as i64 - 1) >= t - (j + 1) {
            return (f as usize, "rule 2");
        }
        let f = (s as usize..=self.n).find(|&f| (self.n as i64 - self.phi(f) as i64) < (f as i64 - s)).unwrap_or(self.n);
        (f, "rule 3")
    }

    fn case2_end(&self, j: usize, s: usize) -> usize {
        let prev = self.a(j - 1).1;
        let f = (prev + 2).max((s + j + 1).saturating_sub(self.setup.t));
        let f = if f == prev + 3 { prev + 4 } else { f };
        if f > s { (prev + 2).min(s) } else { f }
    }

    /// First series of an anchored run answered between the start and the
    /// far end: grow towards the anchor unless `B` can copy the resulting
    /// distance from the far end, else grow away from it.
    fn opening_reply(&self, s: usize, reply: usize) -> (usize, Case, &'static str) {
        // distances to the far end open to a blue copy of `size` edges that
        // holds `reply` and starts right of `min_x`
        let copyable = |d: usize, min_x: usize, size: usize| {
            let x_lo = min_x.max((reply + 1).saturating_sub(size));
            let lo = (self.n + 1).saturating_sub(reply + size).max(1);
            let hi = (self.n + 1).saturating_sub(x_lo + size);
            lo <= d && d <= hi
        };
        let left = self.case2_end(1, s);
        if !copyable(left - 1, s + 1, s - left + 1) {
            return (left, Case::Left, "towards anchor");
        }
        let right = (s + self.setup.t - 2).min(reply.saturating_sub(2)).max(s);
        if s - 1 != 2 && !copyable(s - 1, right + 1, right - s + 1) {
            return (right, Case::Away, "away from anchor");
        }
        (left, Case::Left, "towards anchor")
    }

    fn series_no(&self, j: usize) -> usize {
        self.setup.offset + j
    }

    fn record(&mut self, j: usize) -> &mut SeriesRecord {
        let no = self.series_no(j);
        let idx = self.ledger.series.iter().rposition(|r| r.j == no).expect("series recorded");
        &mut self.ledger.series[idx]
    }

    fn check(&mut self, j: usize, name: &str, held: bool, detail: String) -> Result<()> {
        let (no, strict) = (self.series_no(j), self.setup.strict);
        self.ledger.check(no, name, held, strict, detail)
    }

    fn start_series(&mut self, view: &GameView<'_>, j: usize) -> Result<LineMove> {
        if j > 1 && self.n - self.comps[j - 2].1 <= 2 {
            return self.abandon(view, "no room for another series");
        }
        let s = if j == 1 { self.setup.first } else { self.phi(self.comps[j - 2].1) };
        let e = self.edge(s);
        if !view.is_free(e) {
            return self.abandon(view, "series start is coloured");
        }
        self.comps.push((s, s));
        let no = self.series_no(j);
        self.ledger.series.push(SeriesRecord { j: no, phase: Some(Phase::One), s: e + 1, ..Default::default() });
        self.step = Step::Await { j };
        Ok(LineMove::Play(e))
    }

    fn abandon(&mut self, view: &GameView<'_>, why: &str) -> Result<LineMove> {
        if self.ledger.fallback.is_none() {
            self.ledger.fallback = Some(why.to_string());
        }
        self.ledger.phase = Some(Phase::Fallback);
        self.step = Step::Fallback;
        fewest_replies(view).map(LineMove::Play).ok_or_else(|| Error::Parameter("no free edge".into()))
    }

    fn on_reply(&mut self, view: &GameView<'_>, j: usize) -> Result<LineMove> {
        let reply = view.last_move().expect("B replied");
        let s = self.comps[j - 1].0;
        if j == 1 && self.setup.allow_mirror {
            self.mirrored = self.index[reply].is_some_and(|p| p > s);
            self.ledger.mirrored = self.mirrored;
        }
        let s_blue = self.coord(reply);
        let right = s_blue.is_some_and(|p| p > s);
        let mut first_end = s + self.setup.t - 2;
        if self.setup.anchor.is_some() {
            // keep three edges past an anchored run's first series
            first_end = first_end.min(self.n.saturating_sub(3)).max(s);
        }
        let (f, case, rule) = if j == 1 && (!right || self.setup.allow_mirror) {
            (first_end, Case::First, "")
        } else if j == 1 && self.setup.mirror_exit && s_blue == Some(self.n + 1 - s) {
            (first_end, Case::First, "mirrored start")
        } else if !right {
            let (f, rule) = self.case1_end(j, s);
            (f, Case::Right, rule)
        } else if j == 1 && self.setup.anchor.is_some() {
            self.opening_reply(s, s_blue.expect("reply on the run"))
        } else {
            (self.case2_end(j, s), Case::Left, "")
        };
        let f = if case == Case::Left { f.min(s) } else { f.clamp(s, self.n) };
        let edge_s = self.edge(s) + 1;
        let rec = self.record(j);
        rec.s = edge_s;
        rec.s_blue = Some(reply + 1);
        rec.case = match case {
            Case::First => "first".into(),
            Case::Right => "1".into(),
            Case::Left => "2".into(),
            Case::Away => "away".into(),
        };
        rec.rule = rule.into();
        if case == Case::First && f > self.n {
            return self.abandon(view, "first series leaves no room");
        }
        self.step = Step::Grow { j, f, case, done: f == s };
        self.grow(view)
    }

    fn grow(&mut self, view: &GameView<'_>) -> Result<LineMove> {
        let Step::Grow { j, f, case, done } = self.step else { unreachable!() };
        if done {
            return self.review(view, j, case);
        }
        let (lo, hi) = self.comps[j - 1];
        let (next, span) = match case {
            Case::Left => (lo - 1, (lo - 1, hi)),
            _ => (hi + 1, (lo, hi + 1)),
        };
        if next == 0 || next > self.n || !view.is_free(self.edge(next)) {
            // blocked: the series ends short
            self.record(j).rule.push_str(" cut short");
            return self.review(view, j, case);
        }
        let e = self.edge(next);
        self.comps[j - 1] = span;
        let done = if case == Case::Left { next <= f } else { next >= f };
        self.step = Step::Grow { j, f, case, done };
        Ok(LineMove::Play(e))
    }

    fn review(&mut self, view: &GameView<'_>, j: usize, case: Case) -> Result<LineMove> {
        let blue = self.blue_spans(view);
        let (lo, hi) = self.comps[j - 1];
        let size = hi - lo + 1;
        let fb = self.blue_of(&blue, j).map(|b| if case == Case::Left { b.0 } else { b.1 });
        let fe = self.edge(if case == Case::Left { lo } else { hi }) + 1;
        let fb = fb.map(|p| self.edge(p) + 1);
        let rec = self.record(j);
        rec.f = fe;
        rec.f_blue = fb;
        rec.size = size;
        rec.blue_size = fb.map(|_| size);
        if rec.rule == "mirrored start" {
            self.step = Step::Exited;
            return Ok(LineMove::Exit);
        }

        let total = self.setup.total;
        let log_n = (total as f64).log2();
        if j >= 2 {
            let d = gap(self.a(j - 1), self.a(j));
            if j >= 3 {
                let d_prev = gap(self.a(j - 2), self.a(j - 1));
                self.check(j, "claim1_halving", 2 * d < d_prev, format!("d={d} previous {d_prev}"))?;
            }
            let bound = total as f64 / 2f64.powi(j as i32 - 1);
            self.check(j, "claim1_distance", (d as f64) < bound, format!("d={d} bound {bound:.2}"))?;
            self.check(j, "claim1_count", j <= ceil_log2(total), format!("j={j}"))?;
        }
        if j >= 2 || self.setup.offset > 0 {
            let prev_size = if j >= 2 {
                let prev = self.comps[j - 2];
                prev.1 - prev.0 + 1
            } else {
                self.ledger.series.iter().rev().find(|r| r.j < self.series_no(j)).map_or(usize::MAX, |r| r.size)
            };
            self.check(j, "eq_alpha", size < prev_size, format!("|A|={size} previous {prev_size}"))?;
            self.check(j, "claim1_size", size as f64 > log_n + 4.0, format!("|A|={size}"))?;
        }

        let mut pair = match case {
            Case::First => None,
            Case::Left | Case::Away => Some((j - 1, j)),
            Case::Right => {
                let s_blue = self.record(j).s_blue.and_then(|e| self.coord(e - 1));
                let prev = self.comps[j - 2];
                if s_blue.is_some_and(|p| p > prev.1) {
                    if hi == self.n {
                        return self.abandon(view, "B survived a series reaching the end of the run");
                    }
                    None
                } else {
                    let q = self.q_of(&blue, j - 1).unwrap_or(1);
                    match (self.blue_of(&blue, j), self.blue_of(&blue, j - 1)) {
                        (Some(z), Some(zp)) if between(z, self.a(q - 1), self.a(q)) => {
                            let dz = if z.1 < zp.0 { gap(z, zp) } else { gap(zp, z) };
                            if dz != gap(self.a(j - 1), self.a(j)) {
                                Some((j - 1, j))
                            } else if !self.condition4(&blue, j) {
                                Some((j - 1, j - 2))
                            } else if hi == self.n {
                                return self.abandon(view, "condition 4 held with the series at the end of the run");
                            } else {
                                None
                            }
                        }
                        _ => Some((j - 1, j)),
                    }
                }
            }
        };
        if self.setup.relaxed && case == Case::Right && hi + 2 < self.n {
            if let Some((c, d)) = pair {
                let board = Board::new(view);
                let (cc, dc) = (self.component(&board, c), self.component(&board, d));
                let ok = matches!((cc, dc), (Some(cc), Some(dc)) if distinctive(view, &board, &cc, &dc).is_ok());
                if !ok {
                    pair = None;
                }
            }
        }

        match pair {
            None => {
                for (name, held) in self.conditions(view, &blue, j) {
                    self.check(j, name, held, String::new())?;
                }
                self.start_series(view, j + 1)
            }
            Some((c, d)) => self.enter_phase2(view, j, c, d),
        }
    }

    fn component(&self, board: &Board, p: usize) -> Option<crate::graph::Component> {
        let e = if p == 0 { self.setup.anchor? } else { self.edge(self.comps[p - 1].0) };
        board.red_containing(e).cloned()
    }

    fn enter_phase2(&mut self, view: &GameView<'_>, l: usize, c: usize, d: usize) -> Result<LineMove> {
        let board = Board::new(view);
        let (Some(cc), Some(dc)) = (self.component(&board, c), self.component(&board, d)) else {
            return self.abandon(view, "pair components not found");
        };
        let held = distinctive(view, &board, &cc, &dc);
        self.check(l, "claim2_distinctive", held.is_ok(), held.clone().err().unwrap_or_default())?;
        let t_prime = self.comps[l - 1].1 - self.comps[l - 1].0 + 1;
        let log_n = (self.setup.total as f64).log2();
        let count = self.series_no(l);
        self.check(l, "claim3_count", count <= ceil_log2(self.setup.total), format!("l={count}"))?;
        self.check(l, "claim3_size", t_prime as f64 > log_n + 4.0, format!("t'={t_prime}"))?;
        self.ledger.t_prime = Some(t_prime);
        self.ledger.l = Some(count);
        self.ledger.phase = Some(Phase::Two);
        {
            let (cn, dn) = (self.series_no(c), self.series_no(d));
            let rec = self.record(l);
            rec.pair = Some((cn, dn));
            rec.pair_distance = held.ok();
        }
        let Some(arc) = free_arc(view.graph, view, &cc, &dc) else {
            return self.abandon(view, "no free run between the pair");
        };
        let budget = if self.setup.relaxed { phase2_budget(t_prime, arc.len() - 2, &board) } else { t_prime };
        let p2 = Phase2::new(arc, budget, count, t_prime, self.setup.strict, self.setup.total);
        self.step = Step::Two(Box::new(p2));
        self.phase2(view)
    }

    fn phase2(&mut self, view: &GameView<'_>) -> Result<LineMove> {
        let Step::Two(p2) = &mut self.step else { unreachable!() };
        match p2.next(view, &mut self.ledger)? {
            Phase2Move::Play(e) => Ok(LineMove::Play(e)),
            Phase2Move::Abandon(why) => self.abandon(view, &why),
        }
    }

    pub fn next(&mut self, view: &GameView<'_>) -> Result<LineMove> {
        match &self.step {
            Step::Start => self.start_series(view, 1),
            Step::Await { j } => self.on_reply(view, *j),
            Step::Grow { .. } => self.grow(view),
            Step::Two(_) => self.phase2(view),
            Step::Exited => Ok(LineMove::Exit),
            Step::Fallback => self.abandon(view, ""),
        }
    }
}
