//! Exact game values by memoized search, and strategies read off the solved tables.

mod ef;
mod games;
mod search;

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::game::{Duplicator, EfView, GameView, Player, Side, Spoiler, Strategy, Variant};
use crate::graph::Graph;

pub use ef::graphs_isomorphic;
use ef::EfSearch;
use games::{side_mask, PlusGame, SymGame};
use search::Search;

/// Search budgets and execution mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub max_edges: usize,
    pub max_ef_vertices: usize,
    pub exec: Exec,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_edges: 16, max_ef_vertices: 20, exec: Exec::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// `B` commits to a strategy first.
    Maxmin,
    /// `A` commits to a strategy first.
    Minmax,
}

impl Order {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "maxmin" => Ok(Order::Maxmin),
            "minmax" => Ok(Order::Minmax),
            _ => Err(Error::Parameter(format!("unknown order {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    None,
    Automorphism,
}

impl Reduction {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "off" | "none" => Ok(Reduction::None),
            "auto" | "automorphism" => Ok(Reduction::Automorphism),
            _ => Err(Error::Parameter(format!("unknown reduction {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameValue {
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub graph: String,
    pub game: String,
    pub order: Option<Order>,
    pub value: GameValue,
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub elapsed_ms: f64,
    pub reduction: Reduction,
}

fn position_estimate(m: usize) -> f64 {
    // disjoint equal-size red/blue pairs
    let mut binom = vec![vec![0f64; m + 1]; m + 1];
    for n in 0..=m {
        binom[n][0] = 1.0;
        for k in 1..=n {
            binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0.0 };
        }
    }
    (0..=m / 2).map(|k| binom[m][k] * binom[m - k][k]).sum()
}

enum Inner {
    Sym(Search<SymGame>),
    Plus(Search<PlusGame>),
}

/// A solved (lazily) instance of `Sym(G)` or `Sym+(G)`.
pub struct SymSolver {
    graph: Graph,
    variant: Variant,
    reduction: Reduction,
    inner: Inner,
}

impl SymSolver {
    pub fn new(g: &Graph, variant: Variant, reduction: Reduction, config: &SolverConfig) -> Result<Self> {
        let m = g.edge_count();
        if m > config.max_edges || m > 63 {
            return Err(Error::Capability(format!(
                "{} has {m} edges, budget is {}; roughly {:.3e} positions",
                g.name(),
                config.max_edges,
                position_estimate(m)
            )));
        }
        // witness frontiers are not reduced by automorphisms
        let reduction = if variant == Variant::SymPlus { Reduction::None } else { reduction };
        let inner = match variant {
            Variant::Sym => {
                Inner::Sym(Search::new(SymGame::new(g, reduction == Reduction::Automorphism, config.exec), config.exec))
            }
            Variant::SymPlus => Inner::Plus(Search::new(PlusGame::new(g), config.exec)),
        };
        Ok(SymSolver { graph: g.clone(), variant, reduction, inner })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Backward-induction value of the empty position.
    pub fn value(&self) -> usize {
        match &self.inner {
            Inner::Sym(s) => s.root_value(),
            Inner::Plus(s) => s.root_value(),
        }
    }

    pub fn maxmin(&self) -> usize {
        match &self.inner {
            Inner::Sym(s) => s.maxmin(),
            Inner::Plus(s) => s.maxmin(),
        }
    }

    pub fn minmax(&self) -> usize {
        match &self.inner {
            Inner::Sym(s) => s.minmax(),
            Inner::Plus(s) => s.minmax(),
        }
    }

    fn counters(&self) -> (u64, u64) {
        match &self.inner {
            Inner::Sym(s) => s.counters(),
            Inner::Plus(s) => s.counters(),
        }
    }

    pub fn report(&self, order: Order) -> SolveReport {
        let start = Instant::now();
        let rounds = match order {
            Order::Maxmin => self.maxmin(),
            Order::Minmax => self.minmax(),
        };
        let (states_expanded, memo_hits) = self.counters();
        SolveReport {
            graph: self.graph.name(),
            game: match self.variant {
                Variant::Sym => "sym".into(),
                Variant::SymPlus => "sym+".into(),
            },
            order: Some(order),
            value: GameValue { rounds },
            states_expanded,
            memo_hits,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            reduction: self.reduction,
        }
    }

    /// `A`'s optimal edge after the given move list (`A` to move).
    pub fn best_a(&self, history: &[usize]) -> Option<usize> {
        match &self.inner {
            Inner::Sym(s) => s.best_a(&(side_mask(history, 0), side_mask(history, 1))),
            Inner::Plus(s) => s.best_a(&s.game.replay(history)),
        }
    }

    /// `B`'s optimal answer to the last edge of `history`. `None` if every answer loses.
    pub fn best_b(&self, history: &[usize]) -> Option<usize> {
        let (&a, before) = history.split_last()?;
        match &self.inner {
            Inner::Sym(s) => s.best_b(&(side_mask(before, 0), side_mask(before, 1)), a),
            Inner::Plus(s) => s.best_b(&s.game.replay(before), a),
        }
    }
}

/// Solves `Sym(G)` or `Sym+(G)` under the default budgets.
pub fn solve_sym(g: &Graph, variant: Variant, order: Order, reduction: Reduction) -> Result<SolveReport> {
    solve_sym_with(g, variant, order, reduction, &SolverConfig::default())
}

pub fn solve_sym_with(
    g: &Graph,
    variant: Variant,
    order: Order,
    reduction: Reduction,
    config: &SolverConfig,
) -> Result<SolveReport> {
    let start = Instant::now();
    let solver = SymSolver::new(g, variant, reduction, config)?;
    let mut report = solver.report(order);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// A solved EF game on a fixed pair of graphs.
pub struct EfSolver {
    search: EfSearch,
}

impl EfSolver {
    pub fn new(g0: &Graph, g1: &Graph, config: &SolverConfig) -> Result<Self> {
        let n = g0.vertex_count() + g1.vertex_count();
        if n > config.max_ef_vertices || g0.vertex_count() > 255 || g1.vertex_count() > 255 {
            return Err(Error::Capability(format!(
                "EF on {} and {} has {n} vertices, budget is {}",
                g0.name(),
                g1.name(),
                config.max_ef_vertices
            )));
        }
        Ok(EfSolver { search: EfSearch::new(g0, g1, config.exec) })
    }

    pub fn round_limit(&self) -> usize {
        self.search.limit
    }

    pub fn value(&self) -> usize {
        self.search.root_value()
    }

    pub fn report(&self) -> SolveReport {
        let start = Instant::now();
        let rounds = self.value();
        let (states_expanded, memo_hits) = self.search.counters();
        SolveReport {
            graph: format!("{},{}", self.search.g0.name(), self.search.g1.name()),
            game: "ef".into(),
            order: None,
            value: GameValue { rounds },
            states_expanded,
            memo_hits,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            reduction: Reduction::None,
        }
    }
}

/// Exact `L(Ef(g0, g1))` with round limit `|V(g0)| + |V(g1)|`.
pub fn solve_ef(g0: &Graph, g1: &Graph) -> Result<SolveReport> {
    solve_ef_with(g0, g1, &SolverConfig::default())
}

pub fn solve_ef_with(g0: &Graph, g1: &Graph, config: &SolverConfig) -> Result<SolveReport> {
    Ok(EfSolver::new(g0, g1, config)?.report())
}

/// Plays `A` or `B` optimally from a solved table, lowest edge on ties.
pub struct OptimalStrategy {
    solver: Arc<SymSolver>,
    side: Player,
}

impl OptimalStrategy {
    pub fn new(solver: Arc<SymSolver>, side: Player) -> Self {
        OptimalStrategy { solver, side }
    }
}

impl Strategy for OptimalStrategy {
    fn name(&self) -> String {
        match self.side {
            Player::A => "optimal-a".into(),
            Player::B => "optimal-b".into(),
        }
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        if view.to_move() != self.side {
            return Err(Error::Parameter(format!("{} asked to move for the other side", self.name())));
        }
        let best = match self.side {
            Player::A => self.solver.best_a(view.history),
            Player::B => self.solver.best_b(view.history),
        };
        // a lost B still has to color something
        best.or_else(|| view.free_edges().next())
            .ok_or_else(|| Error::Parameter("no free edge left".into()))
    }
}

/// Solves `g` and returns the optimal strategy for `side`.
pub fn optimal_strategy(g: &Graph, side: Player, variant: Variant) -> Result<OptimalStrategy> {
    let solver = SymSolver::new(g, variant, Reduction::Automorphism, &SolverConfig::default())?;
    Ok(OptimalStrategy::new(Arc::new(solver), side))
}

/// Spoiler and duplicator read off a solved EF table.
pub struct OptimalEf {
    solver: Arc<EfSolver>,
}

impl OptimalEf {
    pub fn new(solver: Arc<EfSolver>) -> Self {
        OptimalEf { solver }
    }
}

impl Spoiler for OptimalEf {
    fn name(&self) -> String {
        "optimal-spoiler".into()
    }

    fn choose(&mut self, view: &EfView<'_>) -> Result<(Side, usize)> {
        let left = view.round_limit.saturating_sub(view.round());
        Ok(self.solver.search.best_spoiler(view.pairs, left).unwrap_or((Side::Zero, 0)))
    }
}

impl Duplicator for OptimalEf {
    fn name(&self) -> String {
        "optimal-duplicator".into()
    }

    fn respond(&mut self, view: &EfView<'_>, side: Side, v: usize) -> Result<usize> {
        if let Some(w) = view.partner(side, v) {
            return Ok(w);
        }
        let left = view.round_limit.saturating_sub(view.round());
        Ok(self.solver.search.best_duplicator(view.pairs, side, v, left).unwrap_or(0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub g0: String,
    pub g1: String,
    pub sym_g1: usize,
    pub sym_g0: usize,
    pub ef: usize,
    /// `min{ef/4, L(Sym(g0))}`.
    pub rhs: f64,
    pub holds: bool,
    /// Line-graph form, evaluated only when `g1` has no triangle.
    pub line: Option<LineInequality>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineInequality {
    pub ef_line: usize,
    /// `min{ef_line/2, L(Sym(g0))}`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `L(Sym(g1)) >= min{L(Ef(g0,g1))/4, L(Sym(g0))}` from exact values,
/// and the line-graph form when `g1` is triangle-free.
pub fn check_sym_ef_inequality(g0: &Graph, g1: &Graph) -> Result<InequalityReport> {
    check_sym_ef_inequality_with(g0, g1, &SolverConfig::default())
}

pub fn check_sym_ef_inequality_with(g0: &Graph, g1: &Graph, config: &SolverConfig) -> Result<InequalityReport> {
    let sym_of = |g: &Graph| -> Result<usize> { Ok(SymSolver::new(g, Variant::Sym, Reduction::Automorphism, config)?.value()) };
    let sym_g0 = sym_of(g0)?;
    let sym_g1 = sym_of(g1)?;
    let ef = EfSolver::new(g0, g1, config)?.value();
    let rhs = (ef as f64 / 4.0).min(sym_g0 as f64);
    let line = if g1.is_triangle_free() {
        let (l0, _) = g0.line_graph()?;
        let (l1, _) = g1.line_graph()?;
        let ef_line = EfSolver::new(&l0, &l1, config)?.value();
        let rhs = (ef_line as f64 / 2.0).min(sym_g0 as f64);
        Some(LineInequality { ef_line, rhs, holds: sym_g1 as f64 >= rhs })
    } else {
        None
    };
    Ok(InequalityReport {
        g0: g0.name(),
        g1: g1.name(),
        sym_g1,
        sym_g0,
        ef,
        rhs,
        holds: sym_g1 as f64 >= rhs,
        line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(g: &Graph, order: Order, red: Reduction) -> usize {
        solve_sym(g, Variant::Sym, order, red).unwrap().value.rounds
    }

    #[test]
    fn small_paths() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(sym(&p2, Order::Maxmin, Reduction::Automorphism), 1);
        let p4 = Graph::path(4).unwrap();
        for order in [Order::Maxmin, Order::Minmax] {
            assert_eq!(sym(&p4, order, Reduction::None), 2);
        }
    }

    #[test]
    fn orders_and_exact_value_agree() {
        for name in ["P5", "C5", "K4", "K1,3", "K2,3"] {
            let g = Graph::from_short_name(name).unwrap();
            let s = SymSolver::new(&g, Variant::Sym, Reduction::Automorphism, &SolverConfig::default()).unwrap();
            let v = s.value();
            assert_eq!(s.maxmin(), v, "{name}");
            assert_eq!(s.minmax(), v, "{name}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(7).unwrap();
        assert!(matches!(solve_sym(&g, Variant::Sym, Order::Maxmin, Reduction::Automorphism), Err(Error::Capability(_))));
        let a = Graph::path(10).unwrap();
        let b = Graph::path(11).unwrap();
        assert!(matches!(solve_ef(&a, &b), Err(Error::Capability(_))));
    }

    #[test]
    fn ef_isomorphic_is_round_limit() {
        let a = Graph::cycle(4).unwrap();
        let r = solve_ef(&a, &a).unwrap();
        assert_eq!(r.value.rounds, 8);
        assert!(!graphs_isomorphic(&Graph::path(3).unwrap(), &Graph::complete_bipartite(1, 3).unwrap()));
    }

    #[test]
    fn ef_p1_p2() {
        // spoiler opens on an end of P_2, then takes the other end
        let a = Graph::path(1).unwrap();
        let b = Graph::path(2).unwrap();
        assert_eq!(solve_ef(&a, &b).unwrap().value.rounds, 1);
    }
}
