use std::collections::HashMap;

use super::reply::{is_valid_reply, valid_replies};
use crate::error::{Error, Result};
use crate::game::{GameView, Strategy};
use crate::graph::{Family, Graph};

/// `B` on `K_{m,l}` with `m`, `l` odd. Keeps the smaller class fixed and
/// builds an involution on the larger one: each newly touched vertex is
/// swapped with a fresh vertex of the same class, and `B` answers with the
/// image of `A`'s edge. After `(max(m,l) - 1) / 2` rounds it keeps any
/// isomorphism-keeping reply it can find.
pub struct BipartiteB {
    /// Vertices of the class the involution acts on.
    large: Vec<usize>,
    guaranteed: usize,
    pairing: HashMap<usize, usize>,
}

impl BipartiteB {
    pub fn new(g: &Graph) -> Result<Self> {
        let (m, l) = match (g.family(), g.bipartite_parts()) {
            (Family::CompleteBipartite, Some(p)) => p,
            _ => return Err(Error::Parameter("bipartite-b needs a complete bipartite graph".into())),
        };
        if m % 2 == 0 || l % 2 == 0 {
            return Err(Error::Parameter(format!("bipartite-b needs odd sides, got K{m},{l}")));
        }
        let large = if l >= m { (m..m + l).collect() } else { (0..m).collect() };
        Ok(BipartiteB { large, guaranteed: (m.max(l) - 1) / 2, pairing: HashMap::new() })
    }

    pub fn guaranteed_rounds(&self) -> usize {
        self.guaranteed
    }

    fn touched(&self, view: &GameView<'_>, v: usize) -> bool {
        self.pairing.contains_key(&v)
            || view.graph.incident(v).iter().any(|&(_, e)| view.red.contains(e) || view.blue.contains(e))
    }
}

impl Strategy for BipartiteB {
    fn name(&self) -> String {
        "bipartite-b".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let a = view.last_move().ok_or_else(|| Error::Parameter("bipartite-b plays second".into()))?;
        let round = view.round() + 1;
        let (x, y) = view.graph.edge(a);
        let (fixed, moving) = if self.large.contains(&y) { (x, y) } else { (y, x) };
        let image = match self.pairing.get(&moving) {
            Some(&w) => Some(w),
            None => {
                let fresh = self.large.iter().copied().find(|&w| w != moving && !self.touched(view, w));
                if let Some(w) = fresh {
                    // `moving` is untouched apart from A's new edge
                    self.pairing.insert(moving, w);
                    self.pairing.insert(w, moving);
                }
                fresh
            }
        };
        let candidate = image.and_then(|w| view.graph.edge_between(fixed, w)).filter(|&b| view.is_free(b));
        if let Some(b) = candidate {
            if round <= self.guaranteed || is_valid_reply(view.graph, view.red, view.blue, b) {
                return Ok(b);
            }
        }
        if round <= self.guaranteed {
            return Err(Error::Invariant {
                message: format!("pairing pool exhausted in round {round}, guarantee is {}", self.guaranteed),
                dump: format!("{:?}", self.pairing),
            });
        }
        let ok = valid_replies(view.graph, view.red, view.blue);
        ok.first()
            .copied()
            .or_else(|| view.free_edges().next())
            .ok_or_else(|| Error::Parameter("no free edge".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_sym, Player, Variant};
    use crate::strategies::RandomPlayer;

    #[test]
    fn k35_survives_two_rounds() {
        let g = Graph::complete_bipartite(3, 5).unwrap();
        for seed in 0..30 {
            let mut b = BipartiteB::new(&g).unwrap();
            assert_eq!(b.guaranteed_rounds(), 2);
            let (out, _) =
                play_sym(&g, &mut RandomPlayer::new(Player::A, seed), &mut b, Variant::Sym, None, seed).unwrap();
            assert!(out.survived_rounds >= 2);
        }
    }

    #[test]
    fn rejects_even_sides() {
        assert!(BipartiteB::new(&Graph::complete_bipartite(2, 3).unwrap()).is_err());
        assert!(BipartiteB::new(&Graph::path(3).unwrap()).is_err());
    }
}
