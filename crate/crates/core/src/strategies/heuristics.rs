//! Baseline opponents for simulations at scale.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::reply::valid_replies;
use crate::error::{Error, Result};
use crate::game::{GameView, Player, Strategy};
use crate::graph::{automorphisms, Family, Graph, EXACT_REDUCTION_MAX_VERTICES};

fn no_free() -> Error {
    Error::Parameter("no free edge".into())
}

/// Uniform random play. As `A` any free edge; as `B` a uniformly random
/// isomorphism-keeping reply when one exists, else any free edge.
pub struct RandomPlayer {
    side: Player,
    rng: ChaCha8Rng,
}

impl RandomPlayer {
    pub fn new(side: Player, seed: u64) -> Self {
        RandomPlayer { side, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomPlayer {
    fn name(&self) -> String {
        "random".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let pool: Vec<usize> = match self.side {
            Player::A => view.free_edges().collect(),
            Player::B => {
                let ok = valid_replies(view.graph, view.red, view.blue);
                if ok.is_empty() {
                    view.free_edges().collect()
                } else {
                    ok
                }
            }
        };
        pool.choose(&mut self.rng).copied().ok_or_else(no_free)
    }
}

/// `A` that samples a few free edges and plays the one leaving `B` the
/// fewest isomorphism-keeping replies, ties broken at random.
pub struct AdversarialRandom {
    rng: ChaCha8Rng,
    samples: usize,
}

impl AdversarialRandom {
    pub fn new(seed: u64) -> Self {
        AdversarialRandom { rng: ChaCha8Rng::seed_from_u64(seed), samples: 12 }
    }
}

impl Strategy for AdversarialRandom {
    fn name(&self) -> String {
        "adversarial-random".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let mut free: Vec<usize> = view.free_edges().collect();
        if free.is_empty() {
            return Err(no_free());
        }
        free.shuffle(&mut self.rng);
        free.truncate(self.samples);
        let mut best = (usize::MAX, Vec::new());
        let mut red = view.red.clone();
        for &a in &free {
            red.insert(a);
            let count = valid_replies(view.graph, &red, view.blue).len();
            red.remove(a);
            if count < best.0 {
                best = (count, vec![a]);
            } else if count == best.0 {
                best.1.push(a);
            }
        }
        Ok(best.1[self.rng.gen_range(0..best.1.len())])
    }
}

/// The free edge leaving `B` the fewest keeping replies, lowest edge on ties.
pub fn fewest_replies(view: &GameView<'_>) -> Option<usize> {
    let mut red = view.red.clone();
    let mut best: Option<(usize, usize)> = None;
    for a in view.free_edges() {
        red.insert(a);
        let count = valid_replies(view.graph, &red, view.blue).len();
        red.remove(a);
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, a));
            if count == 0 {
                break;
            }
        }
    }
    best.map(|(_, a)| a)
}

/// `B` that copies `A` through a graph symmetry when that keeps the
/// isomorphism, and otherwise takes the keeping reply nearest to the copy.
pub struct GreedyCopy {
    image: Vec<usize>,
}

impl GreedyCopy {
    pub fn new(g: &Graph) -> Self {
        GreedyCopy { image: symmetry_edge_map(g) }
    }
}

/// Edge map of a preferred symmetry: reflection for paths, antipodal or
/// near-antipodal rotation for cycles, a family involution or any
/// non-trivial automorphism for small graphs, the identity otherwise.
fn symmetry_edge_map(g: &Graph) -> Vec<usize> {
    let m = g.edge_count();
    match g.family() {
        Family::Path => (0..m).map(|e| m - 1 - e).collect(),
        Family::Cycle => (0..m).map(|e| (e + m / 2) % m).collect(),
        _ => {
            if let Some(p) = crate::graph::family_involution(g) {
                return p.edge_map(g);
            }
            if g.vertex_count() <= EXACT_REDUCTION_MAX_VERTICES {
                if let Ok(auts) = automorphisms(g, EXACT_REDUCTION_MAX_VERTICES) {
                    if let Some(p) = auts.iter().map(|p| p.edge_map(g)).find(|map| map.iter().enumerate().all(|(i, &x)| x != i)) {
                        return p;
                    }
                }
            }
            (0..m).collect()
        }
    }
}

impl Strategy for GreedyCopy {
    fn name(&self) -> String {
        "greedy-copy".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let a = view.last_move().ok_or_else(|| Error::Parameter("greedy-copy plays second".into()))?;
        let target = self.image[a];
        let ok = valid_replies(view.graph, view.red, view.blue);
        if ok.contains(&target) {
            return Ok(target);
        }
        if let Some(&b) = ok.iter().min_by_key(|&&b| (b.abs_diff(target), b)) {
            return Ok(b);
        }
        view.free_edges().next().ok_or_else(no_free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_sym, Variant};

    #[test]
    fn greedy_copy_keeps_even_path() {
        let g = Graph::path(8).unwrap();
        for seed in 0..10 {
            let (out, _) = play_sym(
                &g,
                &mut RandomPlayer::new(Player::A, seed),
                &mut GreedyCopy::new(&g),
                Variant::Sym,
                None,
                seed,
            )
            .unwrap();
            assert_eq!(out.survived_rounds, 4);
        }
    }

    #[test]
    fn random_is_reproducible() {
        let g = Graph::path(9).unwrap();
        let run = |seed| {
            play_sym(&g, &mut RandomPlayer::new(Player::A, seed), &mut RandomPlayer::new(Player::B, seed + 1), Variant::Sym, None, seed)
                .unwrap()
                .1
        };
        assert_eq!(run(0), run(0));
    }

    #[test]
    fn adversarial_vs_random_on_k4_is_well_formed() {
        let g = Graph::complete(4).unwrap();
        let (out, _) =
            play_sym(&g, &mut AdversarialRandom::new(3), &mut RandomPlayer::new(Player::B, 4), Variant::Sym, None, 0)
                .unwrap();
        assert!(out.survived_rounds <= 3);
        assert!(out.winner.is_some());
    }
}
