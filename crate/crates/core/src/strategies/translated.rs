//! `B` on `G_1` driven by an EF duplicator on the line graphs and a `B`
//! strategy on `G_0`.

use serde::{Deserialize, Serialize};

use super::reply::valid_replies;
use crate::error::{Error, Result};
use crate::game::{is_partial_isomorphism, Duplicator, EfView, GameView, Side, Strategy, Variant};
use crate::graph::{subgraphs_isomorphic, EdgeSet, Graph};

/// Why the simulation stopped driving `B`'s moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationStop {
    /// The duplicator broke the partial isomorphism on the line graphs.
    Duplicator,
    /// The simulated `B_0` lost its own game on `G_0`.
    InnerB,
    /// The translated edge was already coloured.
    Occupied,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationLog {
    /// Rounds whose move came from the simulation.
    pub simulated_rounds: usize,
    /// EF rounds the duplicator survived before the first violation.
    pub ef_rounds_ok: usize,
    pub stop: Option<(usize, SimulationStop)>,
}

pub struct Translated {
    g0: Graph,
    l0: Graph,
    l1: Graph,
    duplicator: Box<dyn Duplicator>,
    inner: Box<dyn Strategy>,
    /// `(vertex of L(G_0), vertex of L(G_1))`, i.e. edges of `G_0` and `G_1`.
    ef_pairs: Vec<(usize, usize)>,
    red0: EdgeSet,
    blue0: EdgeSet,
    history0: Vec<usize>,
    ef_limit: usize,
    log: TranslationLog,
}

impl Translated {
    /// `g1` must not contain a triangle, so edge-isomorphic subgraphs are isomorphic.
    pub fn new(
        duplicator: Box<dyn Duplicator>,
        inner: Box<dyn Strategy>,
        g0: &Graph,
        g1: &Graph,
    ) -> Result<Self> {
        if !g1.is_triangle_free() {
            return Err(Error::Parameter(format!("{} contains a triangle", g1.name())));
        }
        let (l0, _) = g0.line_graph()?;
        let (l1, _) = g1.line_graph()?;
        Ok(Translated {
            ef_limit: l0.vertex_count() + l1.vertex_count(),
            l0,
            l1,
            red0: g0.empty_edge_set(),
            blue0: g0.empty_edge_set(),
            g0: g0.clone(),
            duplicator,
            inner,
            ef_pairs: Vec::new(),
            history0: Vec::new(),
            log: TranslationLog::default(),
        })
    }

    pub fn log(&self) -> &TranslationLog {
        &self.log
    }

    fn ef_round(&mut self, side: Side, v: usize) -> Result<Option<usize>> {
        let view = EfView { g0: &self.l0, g1: &self.l1, pairs: &self.ef_pairs, round_limit: self.ef_limit };
        let w = self.duplicator.respond(&view, side, v)?;
        let pair = if side == Side::Zero { (v, w) } else { (w, v) };
        if pair.0 >= self.l0.vertex_count() || pair.1 >= self.l1.vertex_count() {
            return Ok(None);
        }
        self.ef_pairs.push(pair);
        if !is_partial_isomorphism(&self.l0, &self.l1, &self.ef_pairs) {
            return Ok(None);
        }
        self.log.ef_rounds_ok = self.ef_pairs.len();
        Ok(Some(w))
    }

    /// One simulated round. `None` when some oracle failed.
    fn simulate(&mut self, a: usize, view: &GameView<'_>) -> Result<Option<usize>> {
        let round = view.round() + 1;
        let stop = |s: &mut Self, why| {
            s.log.stop = Some((round, why));
            Ok(None)
        };
        let Some(a0) = self.ef_round(Side::One, a)? else {
            return stop(self, SimulationStop::Duplicator);
        };
        if self.red0.contains(a0) || self.blue0.contains(a0) {
            return stop(self, SimulationStop::Occupied);
        }
        self.red0.insert(a0);
        self.history0.push(a0);
        let inner_view = GameView {
            graph: &self.g0,
            red: &self.red0,
            blue: &self.blue0,
            history: &self.history0,
            variant: Variant::Sym,
        };
        let b0 = self.inner.choose(&inner_view)?;
        if b0 >= self.g0.edge_count() || self.red0.contains(b0) || self.blue0.contains(b0) {
            return stop(self, SimulationStop::InnerB);
        }
        self.blue0.insert(b0);
        self.history0.push(b0);
        if !subgraphs_isomorphic(&self.g0, &self.red0, &self.blue0) {
            return stop(self, SimulationStop::InnerB);
        }
        let Some(b) = self.ef_round(Side::Zero, b0)? else {
            return stop(self, SimulationStop::Duplicator);
        };
        if !view.is_free(b) || b == a {
            return stop(self, SimulationStop::Occupied);
        }
        Ok(Some(b))
    }
}

impl Strategy for Translated {
    fn name(&self) -> String {
        "translated".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let a = view.last_move().ok_or_else(|| Error::Parameter("translated plays second".into()))?;
        if self.log.stop.is_none() {
            if let Some(b) = self.simulate(a, view)? {
                let mut blue = view.blue.clone();
                blue.insert(b);
                if !subgraphs_isomorphic(view.graph, view.red, &blue) {
                    return Err(Error::Invariant {
                        message: format!("round {}: both oracles held but the translated reply breaks isomorphism", view.round() + 1),
                        dump: serde_json::to_string(&self.log).unwrap_or_default(),
                    });
                }
                self.log.simulated_rounds += 1;
                return Ok(b);
            }
        }
        let ok = valid_replies(view.graph, view.red, view.blue);
        Ok(ok.first().copied().or_else(|| view.free_edges().next()).unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_sym, Player};
    use crate::strategies::{Mirror, RandomPlayer, ThresholdDuplicator};

    fn translated_path(n: usize) -> Translated {
        let g0 = Graph::path(n + 1).unwrap();
        let g1 = Graph::path(n).unwrap();
        Translated::new(
            Box::new(ThresholdDuplicator::for_paths(n, n - 1)),
            Box::new(Mirror::for_graph(&g0).unwrap()),
            &g0,
            &g1,
        )
        .unwrap()
    }

    #[test]
    fn rejects_triangles() {
        let k4 = Graph::complete(4).unwrap();
        let r = Translated::new(
            Box::new(ThresholdDuplicator::for_paths(3, 3)),
            Box::new(RandomPlayer::new(Player::B, 0)),
            &k4,
            &k4,
        );
        assert!(r.is_err());
    }

    #[test]
    fn survives_on_p9() {
        let g = Graph::path(9).unwrap();
        for seed in 0..20 {
            let mut b = translated_path(9);
            let (out, _) =
                play_sym(&g, &mut RandomPlayer::new(Player::A, seed), &mut b, Variant::Sym, None, seed).unwrap();
            assert!(out.survived_rounds >= 1);
        }
    }

    #[test]
    fn perfect_oracles_on_equal_graphs() {
        let g = Graph::path(8).unwrap();
        for seed in 0..10 {
            let mut b = Translated::new(
                Box::new(ThresholdDuplicator::for_paths(7, 7)),
                Box::new(Mirror::for_graph(&g).unwrap()),
                &g,
                &g,
            )
            .unwrap();
            let (out, _) =
                play_sym(&g, &mut RandomPlayer::new(Player::A, seed), &mut b, Variant::Sym, None, seed).unwrap();
            assert_eq!(out.survived_rounds, 4);
            assert_eq!(b.log().simulated_rounds, 4);
        }
    }
}
