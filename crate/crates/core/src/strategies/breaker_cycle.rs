//! `A`'s program on odd cycles. After the first component `A_1` and its blue
//! copy `A'_1`, the two free arcs between them are played like paths
//! anchored at `A_1`.

use super::breaker_path::{exact_player, reduced_budget};
use super::heuristics::fewest_replies;
use super::line::{Line, LineMove, LineSetup};
use super::series::{series_budget, Board, Phase, SeriesLedger, SeriesRecord};
use crate::error::{Error, Result};
use crate::game::{GameView, Strategy};
use crate::graph::{EdgeSet, Family, Graph};
use crate::solver::OptimalStrategy;

/// How the second series opens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opening {
    /// `1` when the longer arc has odd length, `2` otherwise.
    pub case: u8,
    /// The longer arc `I_1`, ordered from `A_1` towards `A'_1`.
    pub long: Vec<usize>,
    /// The shorter arc `I_2`, in the same orientation.
    pub short: Vec<usize>,
    /// The first edge of the second series.
    pub start: usize,
}

impl Opening {
    /// Coordinate of the start along `long`, from 1.
    pub fn start_coord(&self) -> usize {
        self.long.iter().position(|&e| e == self.start).expect("start on the long arc") + 1
    }
}

/// Reads off the arcs between the single red and single blue component and
/// picks the start of the second series.
pub fn cycle_opening(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Option<Opening> {
    let n = g.edge_count();
    if !matches!(g.family(), Family::Cycle) || red.is_empty() || blue.is_empty() {
        return None;
    }
    // walk forward from the red block's last edge and backward from its first
    let lo = (0..n).find(|&e| red.contains(e) && !red.contains((e + n - 1) % n))?;
    let hi = (0..n).find(|&e| red.contains(e) && !red.contains((e + 1) % n))?;
    let walk = |from: usize, step: usize| {
        let mut arc = Vec::new();
        let mut e = (from + step) % n;
        while !red.contains(e) && !blue.contains(e) {
            arc.push(e);
            e = (e + step) % n;
        }
        (arc, blue.contains(e))
    };
    let (fwd, fwd_blue) = walk(hi, 1);
    let (bwd, bwd_blue) = walk(lo, n - 1);
    if !fwd_blue || !bwd_blue || fwd.len() == bwd.len() {
        return None;
    }
    let (long, short) = if fwd.len() > bwd.len() { (fwd, bwd) } else { (bwd, fwd) };
    let (case, coord) = if long.len() % 2 == 1 {
        (1, long.len().div_ceil(2))
    } else {
        // keep off A_1 when the short arc is a single edge
        (2, (short.len() - 1).max(2) / 2 + 1)
    };
    Some(Opening { case, start: long[coord - 1], long, short })
}

enum Step {
    First,
    Run(Box<Line>),
    Fallback,
}

/// Breaker for `Sym(C_n)` with `n` odd.
pub struct BreakerCycle {
    n: usize,
    t: usize,
    step: Step,
    ledger: SeriesLedger,
    short: Option<Vec<usize>>,
    exact: Option<OptimalStrategy>,
}

impl BreakerCycle {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::check(g)?;
        let n = g.edge_count();
        let t = series_budget(n).min(4.max(n / 7));
        Ok(Self::build(g, t, exact_player(g)?))
    }

    /// Runs the program with series length `t` and no table play.
    pub fn with_series_length(g: &Graph, t: usize) -> Result<Self> {
        Self::check(g)?;
        if t < 4 {
            return Err(Error::Parameter(format!("series length must be at least 4, got {t}")));
        }
        Ok(Self::build(g, t, None))
    }

    fn check(g: &Graph) -> Result<()> {
        if !matches!(g.family(), Family::Cycle) || g.edge_count().is_multiple_of(2) {
            return Err(Error::Parameter(format!("breaker-cycle needs an odd cycle, got {}", g.name())));
        }
        Ok(())
    }

    fn build(g: &Graph, t: usize, exact: Option<OptimalStrategy>) -> Self {
        let n = g.edge_count();
        let ledger = SeriesLedger { n, t, ..Default::default() };
        BreakerCycle { n, t, step: Step::First, ledger, short: None, exact }
    }

    pub fn ledger(&self) -> &SeriesLedger {
        match &self.step {
            Step::Run(line) => &line.ledger,
            _ => &self.ledger,
        }
    }

    pub fn exact(&self) -> bool {
        self.exact.is_some()
    }

    fn abandon(&mut self, view: &GameView<'_>, why: &str) -> Result<usize> {
        if let Step::Run(line) = &mut self.step {
            self.ledger = std::mem::take(&mut line.ledger);
        }
        self.ledger.fallback.get_or_insert_with(|| why.to_string());
        self.ledger.phase = Some(Phase::Fallback);
        self.step = Step::Fallback;
        fewest_replies(view).ok_or_else(|| Error::Parameter("no free edge".into()))
    }

    fn line(&mut self, run: Vec<usize>, first: usize, anchor: usize, offset: usize, mirror_exit: bool, ledger: SeriesLedger) -> Line {
        // the series length follows the run, never reaching |A_1|
        let t = (self.t - offset).min(reduced_budget(run.len()));
        let setup = LineSetup {
            run,
            t,
            strict: false,
            allow_mirror: false,
            first,
            anchor: Some(anchor),
            offset,
            relaxed: true,
            mirror_exit,
            total: self.n,
        };
        Line::new(setup, ledger)
    }

    fn first_series(&mut self, view: &GameView<'_>) -> Result<usize> {
        let placed = view.red.len();
        if placed == 0 {
            self.ledger.series.push(SeriesRecord { j: 1, phase: Some(Phase::One), s: 1, ..Default::default() });
            self.ledger.phase = Some(Phase::One);
            return Ok(0);
        }
        if placed < self.t - 1 {
            let n = self.n;
            let hi = (0..n).find(|&e| view.red.contains(e) && !view.red.contains((e + 1) % n)).expect("red block");
            let lo = (0..n).find(|&e| view.red.contains(e) && !view.red.contains((e + n - 1) % n)).expect("red block");
            for e in [(hi + 1) % n, (lo + n - 1) % n] {
                if view.is_free(e) {
                    return Ok(e);
                }
            }
            return self.abandon(view, "first component is boxed in");
        }
        let Some(opening) = cycle_opening(view.graph, view.red, view.blue) else {
            return self.abandon(view, "no arcs between the first components");
        };
        let board = Board::new(view);
        let rec = &mut self.ledger.series[0];
        rec.size = view.red.len();
        rec.f = board.red[0].last_edge() + 1;
        rec.s_blue = view.b_moves().next().map(|e| e + 1);
        rec.blue_size = board.blue.first().map(|c| c.size());
        rec.case = format!("opening {}", opening.case);
        let anchor = board.red[0].edges[0];
        let ledger = std::mem::take(&mut self.ledger);
        let first = opening.start_coord();
        let line = self.line(opening.long.clone(), first, anchor, 1, opening.case == 2, ledger);
        self.short = Some(opening.short);
        self.step = Step::Run(Box::new(line));
        self.run(view)
    }

    fn run(&mut self, view: &GameView<'_>) -> Result<usize> {
        let Step::Run(line) = &mut self.step else { unreachable!() };
        match line.next(view)? {
            LineMove::Play(e) => Ok(e),
            LineMove::Exit => {
                // B copied the second start; restart from the middle of the short arc
                let short = self.short.take().unwrap_or_default();
                if short.len() < 3 {
                    return self.abandon(view, "short arc too small after a copied start");
                }
                let ledger = std::mem::take(&mut line.ledger);
                let anchor = line.anchor().expect("anchored run");
                let first = short.len().div_ceil(2);
                let next = self.line(short, first, anchor, 2, false, ledger);
                self.step = Step::Run(Box::new(next));
                self.run(view)
            }
        }
    }
}

impl Strategy for BreakerCycle {
    fn name(&self) -> String {
        "breaker-cycle".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        if let Some(exact) = &mut self.exact {
            return exact.choose(view);
        }
        match self.step {
            Step::First => self.first_series(view),
            Step::Run(_) => self.run(view),
            Step::Fallback => self.abandon(view, ""),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::game::Variant;
    use crate::solver::{solve_sym, Order, Reduction};
    use crate::strategies::against_every_b;

    #[test]
    fn odd_long_arc_starts_in_its_middle() {
        let g = Graph::cycle(7).unwrap();
        let red = EdgeSet::from_edges(7, [0, 1]);
        let blue = EdgeSet::from_edges(7, [2, 3]);
        let op = cycle_opening(&g, &red, &blue).unwrap();
        assert_eq!(op.case, 1);
        assert_eq!(op.long, vec![6, 5, 4]);
        assert!(op.short.is_empty());
        assert_eq!((op.start, op.start_coord()), (5, 2));
    }

    #[test]
    fn arc_parity_selects_the_case() {
        let g = Graph::cycle(9).unwrap();
        let red = EdgeSet::from_edges(9, [0]);
        let op = cycle_opening(&g, &red, &EdgeSet::from_edges(9, [6])).unwrap();
        assert_eq!((op.case, op.long.len(), op.short.len()), (1, 5, 2));
        let op = cycle_opening(&g, &red, &EdgeSet::from_edges(9, [5])).unwrap();
        assert_eq!((op.case, op.long, op.short), (2, vec![1, 2, 3, 4], vec![8, 7, 6]));
    }

    #[test]
    fn equal_arcs_have_no_opening() {
        let g = Graph::cycle(7).unwrap();
        let red = EdgeSet::from_edges(7, [0]);
        assert!(cycle_opening(&g, &red, &EdgeSet::from_edges(7, [3, 4])).is_none());
    }

    #[test]
    fn small_cycles_match_the_solver_against_every_b() {
        for n in [5, 7, 9] {
            let g = Graph::cycle(n).unwrap();
            let value = solve_sym(&g, Variant::Sym, Order::Maxmin, Reduction::Automorphism).unwrap().value.rounds;
            let make = || -> Result<Box<dyn Strategy>> { Ok(Box::new(BreakerCycle::new(&g)?)) };
            let report = against_every_b(&g, Variant::Sym, Exec::Parallel, &make).unwrap();
            if value < n / 2 {
                assert_eq!(report.a_wins, report.leaves, "C_{n}");
            }
            assert_eq!(report.worst, value, "C_{n}");
        }
    }
}
