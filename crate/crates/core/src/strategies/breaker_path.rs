//! `A`'s winning program on odd paths: a run of shrinking series that ends in
//! a distinctive pair, then distance halving inside the pair's gap.

use std::sync::Arc;

use super::line::{Line, LineMove, LineSetup};
use super::series::{series_budget, SeriesLedger};
use crate::error::{Error, Result};
use crate::game::{GameView, Player, Strategy, Variant};
use crate::graph::{Family, Graph};
use crate::solver::{OptimalStrategy, Reduction, SolverConfig, SymSolver};

/// Paths and cycles up to this many edges are played from the solved table.
pub const EXACT_BREAKER_EDGES: usize = 15;

/// Series length used when `n` is too small for `4⌈log n⌉ + 22`.
pub fn reduced_budget(n: usize) -> usize {
    series_budget(n).min(2 * n / 7).max(2)
}

/// Series length for `n` edges and whether the analysed regime `n > 14t` holds.
pub fn budget_for(n: usize) -> (usize, bool) {
    let t = series_budget(n);
    if n > 14 * t { (t, true) } else { (reduced_budget(n), false) }
}

pub(crate) fn exact_player(g: &Graph) -> Result<Option<OptimalStrategy>> {
    if g.edge_count() > EXACT_BREAKER_EDGES {
        return Ok(None);
    }
    let solver = SymSolver::new(g, Variant::Sym, Reduction::Automorphism, &SolverConfig::default())?;
    Ok(Some(OptimalStrategy::new(Arc::new(solver), Player::A)))
}

/// Breaker for `Sym(P_n)` with `n` odd.
pub struct BreakerPath {
    line: Line,
    strict: bool,
    exact: Option<OptimalStrategy>,
}

impl BreakerPath {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::check(g)?;
        let (t, strict) = budget_for(g.edge_count());
        Ok(Self::build(g, t, strict, exact_player(g)?))
    }

    /// Runs the program with series length `t` and no table play.
    pub fn with_series_length(g: &Graph, t: usize) -> Result<Self> {
        Self::check(g)?;
        if t < 2 {
            return Err(Error::Parameter(format!("series length must be at least 2, got {t}")));
        }
        let n = g.edge_count();
        Ok(Self::build(g, t, t == series_budget(n) && n > 14 * t, None))
    }

    fn check(g: &Graph) -> Result<()> {
        if !matches!(g.family(), Family::Path) || g.edge_count().is_multiple_of(2) {
            return Err(Error::Parameter(format!("breaker-path needs a path with an odd number of edges, got {}", g.name())));
        }
        Ok(())
    }

    fn build(g: &Graph, t: usize, strict: bool, exact: Option<OptimalStrategy>) -> Self {
        let n = g.edge_count();
        let setup = LineSetup {
            run: (0..n).collect(),
            t,
            strict,
            allow_mirror: true,
            first: n.div_ceil(2),
            anchor: None,
            offset: 0,
            relaxed: false,
            mirror_exit: false,
            total: n,
        };
        let ledger = SeriesLedger { n, t, ..Default::default() };
        BreakerPath { line: Line::new(setup, ledger), strict, exact }
    }

    pub fn ledger(&self) -> &SeriesLedger {
        &self.line.ledger
    }

    /// Whether the analysed regime applies and checks are asserted.
    pub fn strict(&self) -> bool {
        self.strict
    }

    /// Whether moves come from the solved table.
    pub fn exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl Strategy for BreakerPath {
    fn name(&self) -> String {
        "breaker-path".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        if let Some(exact) = &mut self.exact {
            return exact.choose(view);
        }
        match self.line.next(view)? {
            LineMove::Play(e) => Ok(e),
            LineMove::Exit => Err(Error::Parameter("path program left its run".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::series::phi;

    #[test]
    fn budgets() {
        assert_eq!(series_budget(101), 50);
        assert_eq!(budget_for(1001), (62, true));
        assert!(!budget_for(101).1);
    }

    #[test]
    fn opening_on_p101() {
        use crate::game::{play_sym, Scripted};
        let g = Graph::path(101).unwrap();
        let mut a = BreakerPath::with_series_length(&g, series_budget(101)).unwrap();
        let mut b = Scripted::new((0..60).collect());
        play_sym(&g, &mut a, &mut b, Variant::Sym, None, 0).unwrap();
        let ledger = a.ledger();
        assert!(!ledger.mirrored);
        assert_eq!((ledger.series[0].s, ledger.series[0].f), (51, 99));
        assert_eq!(phi(101, 99), 100);
        // n > 14t fails here, so the room condition is recorded as broken
        assert!(ledger.failed_checks().any(|c| c.name == "condition1" && !c.strict));
    }

    #[test]
    fn mirrors_when_b_starts_right() {
        use crate::game::{play_sym, Scripted};
        let g = Graph::path(101).unwrap();
        let mut a = BreakerPath::with_series_length(&g, 50).unwrap();
        let mut b = Scripted::new((41..101).rev().collect());
        play_sym(&g, &mut a, &mut b, Variant::Sym, Some(3), 0).unwrap();
        assert!(a.ledger().mirrored);
        // edge 50 in the graph's numbering is edge 52 after reflection
        assert_eq!(a.ledger().series[0].s, 51);
    }
}
