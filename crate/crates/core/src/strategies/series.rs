//! Series bookkeeping and the distance-halving phase shared by the path and
//! cycle breakers.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::game::GameView;
use crate::graph::{component_distance, components, Component, Distance, DistanceMode, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    One,
    Two,
    LastMove,
    Fallback,
}

/// One runtime check from the analysis of the breaker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub series: usize,
    pub name: String,
    pub held: bool,
    /// Whether a failure is an error in this run.
    pub strict: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Record of one series. Edges are 1-based in the graph's own numbering.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub j: usize,
    pub phase: Option<Phase>,
    pub s: usize,
    pub f: usize,
    pub s_blue: Option<usize>,
    pub f_blue: Option<usize>,
    pub size: usize,
    pub blue_size: Option<usize>,
    pub case: String,
    pub rule: String,
    /// Series indices of the distinctive pair declared at the end, if any.
    pub pair: Option<(usize, usize)>,
    pub pair_distance: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesLedger {
    pub n: usize,
    pub t: usize,
    pub t_prime: Option<usize>,
    pub l: Option<usize>,
    pub mirrored: bool,
    pub phase: Option<Phase>,
    pub series: Vec<SeriesRecord>,
    pub checks: Vec<Check>,
    pub fallback: Option<String>,
}

impl SeriesLedger {
    pub fn dump(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.held)
    }

    /// Records a check; a strict failure becomes an invariant error.
    pub fn check(&mut self, series: usize, name: &str, held: bool, strict: bool, detail: String) -> Result<(), Error> {
        self.checks.push(Check { series, name: name.into(), held, strict, detail: detail.clone() });
        if !held && strict {
            return Err(Error::Invariant { message: format!("series {series}: {name} failed {detail}"), dump: self.dump() });
        }
        Ok(())
    }
}

/// `⌈log2 n⌉`.
pub fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

/// `t = 4⌈log n⌉ + 22`.
pub fn series_budget(n: usize) -> usize {
    4 * ceil_log2(n) + 22
}

/// Start of the next series after one ending at `x`: `x + ⌈(n - x)/2⌉`.
pub fn phi(n: usize, x: usize) -> usize {
    x + (n - x).div_ceil(2)
}

/// Red and blue components with the counterpart lookup by size.
pub struct Board {
    pub red: Vec<Component>,
    pub blue: Vec<Component>,
}

impl Board {
    pub fn new(view: &GameView<'_>) -> Self {
        Board { red: components(view.graph, view.red), blue: components(view.graph, view.blue) }
    }

    pub fn red_containing(&self, e: usize) -> Option<&Component> {
        self.red.iter().find(|c| c.edges.binary_search(&e).is_ok())
    }


    /// The blue component of a given size, if exactly one exists.
    pub fn blue_of_size(&self, size: usize) -> Option<&Component> {
        let mut it = self.blue.iter().filter(|c| c.size() == size);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }
}

/// Distance through uncoloured edges only.
pub fn free_distance(view: &GameView<'_>, a: &Component, b: &Component) -> Distance {
    let occupied = view.red.union(view.blue);
    component_distance(view.graph, a, b, DistanceMode::UnchosenOnly, &occupied).unwrap_or(Distance::Finite(0))
}

/// Tests the three defining conditions of a distinctive pair. Red distances
/// only run through uncoloured edges, which is the second condition; blue
/// counterparts are the blue components of equal size.
pub fn distinctive(view: &GameView<'_>, board: &Board, c: &Component, d: &Component) -> Result<usize, String> {
    let Distance::Finite(dist) = free_distance(view, c, d) else {
        return Err("coloured edge between the red pair".into());
    };
    if dist == 2 {
        return Err("red distance is 2".into());
    }
    let (Some(c2), Some(d2)) = (board.blue_of_size(c.size()), board.blue_of_size(d.size())) else {
        return Err("blue counterparts not identified by size".into());
    };
    if c2 == d2 {
        return Err("blue counterparts coincide".into());
    }
    if free_distance(view, c2, d2) == Distance::Finite(dist) {
        return Err(format!("blue pair also at free distance {dist}"));
    }
    Ok(dist)
}

/// Shortest run of uncoloured edges from `c` to `d`, framed by the nearest
/// edge of each: `[edge of c, free..., edge of d]`.
pub fn free_arc(g: &Graph, view: &GameView<'_>, c: &Component, d: &Component) -> Option<Vec<usize>> {
    use std::collections::VecDeque;
    let n = g.vertex_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &v in &c.vertices {
        seen[v] = true;
        queue.push_back(v);
    }
    let mut hit = None;
    while let Some(v) = queue.pop_front() {
        if d.contains_vertex(v) {
            hit = Some(v);
            break;
        }
        for &(w, e) in g.incident(v) {
            if !seen[w] && view.is_free(e) {
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    let end = hit?;
    let mut free = Vec::new();
    let mut v = end;
    while let Some((u, e)) = prev[v] {
        free.push(e);
        v = u;
    }
    free.reverse();
    let start = v;
    let edge_at = |comp: &Component, x: usize| comp.edges.iter().copied().find(|&e| {
        let (p, q) = g.edge(e);
        p == x || q == x
    });
    let mut arc = vec![edge_at(c, start)?];
    arc.extend(free);
    arc.push(edge_at(d, end)?);
    Some(arc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Growth {
    Right { f: usize },
    Left { f: usize },
    Alternate { next_right: bool },
}

#[derive(Clone, Debug)]
enum Step {
    Start,
    Await { s: usize },
    Grow { lo: usize, hi: usize, growth: Growth, case: u8, done: bool, record: usize },
    Last { edge: usize },
}

/// Result of one call into the distance-halving phase.
pub enum Phase2Move {
    Play(usize),
    /// The phase cannot continue; the reason goes to the ledger.
    Abandon(String),
}

/// Distance-halving phase between the two members of a distinctive pair.
pub struct Phase2 {
    /// Series index within the phase, from 1.
    pub j: usize,
    pub t_prime: usize,
    /// First series number of the phase in the ledger's numbering.
    pub offset: usize,
    pub d0: usize,
    pub d_prev: usize,
    arc: Vec<usize>,
    step: Step,
    prev_size: usize,
    strict: bool,
    log_n: f64,
}

impl Phase2 {
    pub fn new(arc: Vec<usize>, t_prime: usize, offset: usize, prev_size: usize, strict: bool, n: usize) -> Self {
        let d0 = arc.len() - 2;
        Phase2 {
            j: 1,
            t_prime,
            offset,
            d0,
            d_prev: d0,
            arc,
            step: Step::Start,
            prev_size,
            strict,
            log_n: (n as f64).log2(),
        }
    }

    fn len(&self) -> usize {
        self.arc.len()
    }

    pub fn next(&mut self, view: &GameView<'_>, ledger: &mut SeriesLedger) -> Result<Phase2Move, Error> {
        loop {
            match self.step.clone() {
                Step::Start => {
                    let d = self.len() - 2;
                    if d == 1 {
                        let edge = self.arc[1];
                        self.step = Step::Last { edge };
                        ledger.phase = Some(Phase::LastMove);
                        return Ok(Phase2Move::Play(edge));
                    }
                    let s = (self.len() - 2).div_ceil(2);
                    if !view.is_free(self.arc[s]) {
                        return Ok(Phase2Move::Abandon("middle edge of the gap is coloured".into()));
                    }
                    ledger.series.push(SeriesRecord {
                        j: self.offset + self.j,
                        phase: Some(Phase::Two),
                        s: self.arc[s] + 1,
                        ..Default::default()
                    });
                    self.step = Step::Await { s };
                    return Ok(Phase2Move::Play(self.arc[s]));
                }
                Step::Await { s } => {
                    let reply = view.last_move().expect("B replied");
                    let record = ledger.series.len() - 1;
                    ledger.series[record].s_blue = Some(reply + 1);
                    let idx = self.arc.iter().position(|&e| e == reply).filter(|&i| i > 0 && i < self.len() - 1);
                    let b = self.len() - 1;
                    let span = self.t_prime as i64 - self.j as i64 - 1;
                    if span < 0 {
                        return Ok(Phase2Move::Abandon(format!("series length t'-j is {} in phase two", span + 1)));
                    }
                    let span = span as usize;
                    let (growth, case) = match idx {
                        Some(i) if i < s => {
                            let f = if s + span == b - 3 { b - 4 } else { (b - 2).min(s + span) };
                            (Growth::Right { f: f.max(s) }, 1)
                        }
                        Some(i) if i > s => {
                            let f = if s as i64 - span as i64 == 3 { 4 } else { 2.max(s.saturating_sub(span)) };
                            (Growth::Left { f: f.min(s) }, 2)
                        }
                        _ => (Growth::Alternate { next_right: true }, 3),
                    };
                    ledger.series[record].case = format!("{case}");
                    let done = case == 3 && self.situation(s, s).is_some();
                    let done = done || matches!(growth, Growth::Right { f } | Growth::Left { f } if f == s);
                    self.step = Step::Grow { lo: s, hi: s, growth, case, done, record };
                }
                Step::Grow { lo, hi, growth, case, done, record } => {
                    if done {
                        return self.finish(view, ledger, lo, hi, case, record);
                    }
                    let (lo2, hi2, edge, growth2) = match growth {
                        Growth::Right { .. } => (lo, hi + 1, hi + 1, growth),
                        Growth::Left { .. } => (lo - 1, hi, lo - 1, growth),
                        Growth::Alternate { next_right } => {
                            let b = self.len() - 1;
                            let right_ok = hi + 3 <= b;
                            let left_ok = lo >= 3;
                            let go_right = (next_right && right_ok) || !left_ok;
                            if !right_ok && !left_ok {
                                self.step = Step::Grow { lo, hi, growth, case, done: true, record };
                                continue;
                            }
                            if go_right {
                                (lo, hi + 1, hi + 1, Growth::Alternate { next_right: false })
                            } else {
                                (lo - 1, hi, lo - 1, Growth::Alternate { next_right: true })
                            }
                        }
                    };
                    let e = self.arc[edge];
                    if !view.is_free(e) {
                        return Ok(Phase2Move::Abandon("planned edge in the gap is coloured".into()));
                    }
                    let finished = match growth2 {
                        Growth::Right { f } => hi2 >= f,
                        Growth::Left { f } => lo2 <= f,
                        Growth::Alternate { .. } => self.situation(lo2, hi2).is_some(),
                    };
                    self.step = Step::Grow { lo: lo2, hi: hi2, growth: growth2, case, done: finished, record };
                    return Ok(Phase2Move::Play(e));
                }
                Step::Last { edge } => {
                    return Ok(Phase2Move::Abandon(format!("B survived the last move on edge {}", edge + 1)));
                }
            }
        }
    }

    /// Which stopping situation of the alternating growth holds, in listed order.
    fn situation(&self, lo: usize, hi: usize) -> Option<u8> {
        let b = self.len() - 1;
        let (dc, dd) = (lo - 1, b - hi - 1);
        let size = hi - lo + 1;
        let target = self.t_prime as i64 - self.j as i64;
        if dc == 1 && dd == 1 {
            Some(1)
        } else if size as i64 == target && dc != 2 && dd != 2 {
            Some(2)
        } else if target - 3 <= size as i64 && (size as i64) < target && dc == 3 && dd == 3 {
            Some(3)
        } else {
            None
        }
    }

    fn finish(
        &mut self,
        view: &GameView<'_>,
        ledger: &mut SeriesLedger,
        lo: usize,
        hi: usize,
        case: u8,
        record: usize,
    ) -> Result<Phase2Move, Error> {
        let board = Board::new(view);
        let series = self.offset + self.j;
        let size = hi - lo + 1;
        let (Some(c), Some(a), Some(d)) = (
            board.red_containing(self.arc[0]).cloned(),
            board.red_containing(self.arc[lo]).cloned(),
            board.red_containing(self.arc[self.len() - 1]).cloned(),
        ) else {
            return Ok(Phase2Move::Abandon("red components of the gap not found".into()));
        };
        let rec = &mut ledger.series[record];
        rec.f = self.arc[if case == 2 { lo } else { hi }] + 1;
        rec.size = a.size();
        if let Some(bc) = board.blue_of_size(a.size()) {
            rec.blue_size = Some(bc.size());
        }
        if case == 3 {
            rec.rule = self.situation(lo, hi).map_or("blocked".into(), |s| format!("situation {s}"));
        }
        let strict = self.strict;
        ledger.check(series, "eq_alpha", size < self.prev_size, strict, format!("|A|={size} previous {}", self.prev_size))?;
        let options: Vec<(bool, Vec<usize>)> = match case {
            1 => vec![(false, self.arc[hi..].to_vec())],
            2 => vec![(true, self.arc[..=lo].to_vec())],
            _ => vec![(true, self.arc[..=lo].to_vec()), (false, self.arc[hi..].to_vec())],
        };
        let mut chosen = None;
        let mut reasons = Vec::new();
        for (with_c, arc) in options {
            let (x, y) = if with_c { (&c, &a) } else { (&a, &d) };
            match distinctive(view, &board, x, y) {
                Ok(dist) => {
                    chosen = Some((arc, dist));
                    break;
                }
                Err(why) => reasons.push(why),
            }
        }
        let Some((arc, dist)) = chosen else {
            ledger.check(series, "claim5_distinctive", false, strict, reasons.join("; "))?;
            return Ok(Phase2Move::Abandon("no distinctive pair after the series".into()));
        };
        ledger.check(series, "claim5_distinctive", true, strict, String::new())?;
        ledger.series[record].pair_distance = Some(dist);
        ledger.check(series, "claim4_halving", 2 * dist <= self.d_prev, strict, format!("d={dist} previous {}", self.d_prev))?;
        ledger.check(
            series,
            "claim4_geometric",
            (dist as f64) <= self.d0 as f64 / 2f64.powi(self.j as i32),
            strict,
            format!("d={dist} d0={} j={}", self.d0, self.j),
        )?;
        ledger.check(
            series,
            "claim4_count",
            (self.j as f64) < self.log_n - 1.0,
            strict,
            format!("j={} log n={:.3}", self.j, self.log_n),
        )?;
        self.arc = arc;
        self.d_prev = dist;
        self.prev_size = size;
        self.j += 1;
        self.step = Step::Start;
        self.next(view, ledger)
    }
}
