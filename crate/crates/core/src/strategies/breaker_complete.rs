//! `A`'s program on complete graphs: a red 3-star whose leaves `B` cannot
//! join, followed by a short continuation from one of five reachable
//! positions.

use serde::{Deserialize, Serialize};

use super::breaker_path::exact_player;
use super::heuristics::fewest_replies;
use super::reply::is_valid_reply;
use crate::error::{Error, Result};
use crate::game::{GameView, Strategy};
use crate::graph::{EdgeSet, Family, Graph};
use crate::solver::OptimalStrategy;

/// Rounds after which the red and blue 3-stars are complete.
const STAR_ROUNDS: usize = 3;

/// The positions after the third round, named as in the analysis of `Sym(K_n)`.
///
/// Red is the star `u0; u1, u2, u3`. Blue is a star whose centre is `u0`
/// (`Four`) or an untouched vertex `w` with leaves
/// `One`: `u0` and two red leaves, `Two`: two red leaves and a new vertex,
/// `Three`: `u0`, a red leaf and a new vertex, `Five`: a red leaf and two new
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Position {
    One,
    Two,
    Three,
    Four,
    Five,
}

/// A 3-star with its centre and leaves in increasing vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// Reads a 3-star off an edge set, if it is one.
pub fn star_of(g: &Graph, set: &EdgeSet) -> Option<Star> {
    if set.len() != 3 {
        return None;
    }
    let ends: Vec<(usize, usize)> = set.iter().map(|e| g.edge(e)).collect();
    let (a, b) = ends[0];
    let center = [a, b].into_iter().find(|&c| ends.iter().all(|&(x, y)| x == c || y == c))?;
    let mut leaves = [0; 3];
    for (slot, &(x, y)) in leaves.iter_mut().zip(&ends) {
        *slot = if x == center { y } else { x };
    }
    leaves.sort_unstable();
    Some(Star { center, leaves })
}

/// Which of the five positions red and blue form, if any.
pub fn classify(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Option<Position> {
    let r = star_of(g, red)?;
    let b = star_of(g, blue)?;
    if b.center == r.center {
        return Some(Position::Four);
    }
    if r.leaves.contains(&b.center) {
        return None;
    }
    let shared = b.leaves.iter().filter(|v| r.leaves.contains(v)).count();
    match (b.leaves.contains(&r.center), shared) {
        (true, 2) => Some(Position::One),
        (false, 2) => Some(Position::Two),
        (true, 1) => Some(Position::Three),
        (false, 1) => Some(Position::Five),
        _ => None,
    }
}

fn touched(g: &Graph, sets: &[&EdgeSet]) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    for set in sets {
        for e in set.iter() {
            let (u, v) = g.edge(e);
            seen[u] = true;
            seen[v] = true;
        }
    }
    seen
}

/// Free edges up to renaming untouched vertices: every edge among touched
/// vertices, plus edges to the two lowest untouched ones.
fn candidates(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Vec<usize> {
    let seen = touched(g, &[red, blue]);
    let fresh: Vec<usize> = (0..g.vertex_count()).filter(|&v| !seen[v]).take(2).collect();
    let keep = |v: usize| seen[v] || fresh.contains(&v);
    (0..g.edge_count())
        .filter(|&e| !red.contains(e) && !blue.contains(e))
        .filter(|&e| {
            let (u, v) = g.edge(e);
            keep(u) && keep(v)
        })
        .collect()
}

fn replies(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Vec<usize> {
    candidates(g, red, blue).into_iter().filter(|&b| is_valid_reply(g, red, blue, b)).collect()
}

/// A move after which `A` breaks the isomorphism within `k` of its moves,
/// trying `prefer` first.
fn forcing(g: &Graph, red: &EdgeSet, blue: &EdgeSet, k: usize, prefer: &[usize]) -> Option<usize> {
    if k == 0 {
        return None;
    }
    let mut order: Vec<usize> = prefer.iter().copied().filter(|&e| !red.contains(e) && !blue.contains(e)).collect();
    order.extend(candidates(g, red, blue).into_iter().filter(|e| !prefer.contains(e)));
    let mut red = red.clone();
    order.into_iter().find(|&a| {
        red.insert(a);
        let ok = replies(g, &red, blue).into_iter().all(|b| {
            let mut blue = blue.clone();
            blue.insert(b);
            forcing(g, &red, &blue, k - 1, &[]).is_some()
        });
        red.remove(a);
        ok
    })
}

fn keeps_star(g: &Graph, red: &EdgeSet, a: usize) -> bool {
    let mut next = red.clone();
    next.insert(a);
    match next.len() {
        1 => true,
        2 => {
            let mut it = next.iter();
            g.edges_share_vertex(it.next().unwrap(), it.next().unwrap())
        }
        _ => star_of(g, &next).is_some(),
    }
}

/// A star move that reaches one of the five positions whatever `B` does.
fn star_move(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Option<usize> {
    let left = STAR_ROUNDS - red.len();
    let moves: Vec<usize> = candidates(g, red, blue).into_iter().filter(|&a| keeps_star(g, red, a)).collect();
    let mut red = red.clone();
    moves.into_iter().find(|&a| {
        red.insert(a);
        let ok = replies(g, &red, blue).into_iter().all(|b| {
            let mut blue = blue.clone();
            blue.insert(b);
            if left == 1 {
                classify(g, &red, &blue).is_some()
            } else {
                star_move(g, &red, &blue).is_some()
            }
        });
        red.remove(a);
        ok
    })
}

/// The continuation from each position, as vertex pairs.
fn plan(g: &Graph, red: &EdgeSet, blue: &EdgeSet, pos: Position) -> Vec<(usize, usize)> {
    let r = star_of(g, red).expect("red star");
    let b = star_of(g, blue).expect("blue star");
    let u = r.leaves;
    let shared: Vec<usize> = u.iter().copied().filter(|v| b.leaves.contains(v)).collect();
    let leaf_pairs = |first: Option<(usize, usize)>| {
        let mut pairs: Vec<(usize, usize)> = first.into_iter().collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if Some((u[i], u[j])) != first {
                pairs.push((u[i], u[j]));
            }
        }
        pairs
    };
    match pos {
        // a red triangle on two shared leaves; blue cannot close one
        Position::One => leaf_pairs(Some((shared[0], shared[1]))),
        // red K4 on the star, starting with the only leaf pair blue could also use
        Position::Two => leaf_pairs(Some((shared[0], shared[1]))),
        Position::Three => leaf_pairs(None),
        Position::Four => {
            let v = b.leaves;
            vec![(v[0], v[1]), (v[1], v[2]), (u[0], u[1]), (u[1], u[2]), (u[0], u[2])]
        }
        Position::Five => {
            let u3 = shared[0];
            let mut fresh = b.leaves.iter().copied().filter(|&v| v != u3);
            let (v2, v1) = (fresh.next().unwrap(), fresh.next().unwrap());
            let rest: Vec<usize> = u.iter().copied().filter(|&v| v != u3).collect();
            let (u2, u1) = (rest[1], rest[0]);
            vec![(u3, v2), (v2, v1), (u1, v1), (u2, v1), (u1, u2), (u1, u3), (u2, u3)]
        }
    }
}

/// `A` moves within which the program is meant to win.
pub const COMPLETE_MOVE_BUDGET: usize = 7;

/// Breaker for `Sym(K_n)`.
pub struct BreakerComplete {
    exact: Option<OptimalStrategy>,
    position: Option<Position>,
    plan: Vec<usize>,
}

impl BreakerComplete {
    /// Plays from the solved table when `K_n` is small enough, else runs the program.
    pub fn new(g: &Graph) -> Result<Self> {
        Self::check(g)?;
        Ok(BreakerComplete { exact: exact_player(g)?, position: None, plan: Vec::new() })
    }

    /// Always runs the star program. Needs `n >= 6`.
    pub fn program(g: &Graph) -> Result<Self> {
        Self::check(g)?;
        if g.vertex_count() < 6 {
            return Err(Error::Parameter(format!("the star program needs n >= 6, got {}", g.vertex_count())));
        }
        Ok(BreakerComplete { exact: None, position: None, plan: Vec::new() })
    }

    fn check(g: &Graph) -> Result<()> {
        if !matches!(g.family(), Family::Complete) {
            return Err(Error::Parameter(format!("{} is not a complete graph", g.name())));
        }
        Ok(())
    }

    /// The position reached after the third round.
    pub fn position(&self) -> Option<Position> {
        self.position
    }

    pub fn exact(&self) -> bool {
        self.exact.is_some()
    }

    fn program_move(&mut self, view: &GameView<'_>) -> Result<usize> {
        let (g, red, blue) = (view.graph, view.red, view.blue);
        let moves = red.len();
        if moves < STAR_ROUNDS {
            if let Some(a) = star_move(g, red, blue) {
                return Ok(a);
            }
            let any = candidates(g, red, blue).into_iter().find(|&a| keeps_star(g, red, a));
            return any.or_else(|| fewest_replies(view)).ok_or_else(|| Error::Parameter("no free edge".into()));
        }
        if moves == STAR_ROUNDS {
            self.position = classify(g, red, blue);
            if let Some(pos) = self.position {
                self.plan = plan(g, red, blue, pos)
                    .into_iter()
                    .filter_map(|(x, y)| g.edge_between(x, y))
                    .collect();
            }
        }
        let planned: Vec<usize> = self.plan.iter().copied().filter(|&e| view.is_free(e)).collect();
        let left = COMPLETE_MOVE_BUDGET.saturating_sub(moves);
        // look two moves ahead only once the tree is small
        let depth = if left <= 2 { left } else { 1 };
        if let Some(a) = forcing(g, red, blue, depth, &planned) {
            return Ok(a);
        }
        planned
            .first()
            .copied()
            .or_else(|| fewest_replies(view))
            .ok_or_else(|| Error::Parameter("no free edge".into()))
    }
}

impl Strategy for BreakerComplete {
    fn name(&self) -> String {
        "breaker-kn".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        if let Some(exact) = &mut self.exact {
            return exact.choose(view);
        }
        self.program_move(view)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Graph, pairs: &[(usize, usize)]) -> EdgeSet {
        EdgeSet::from_edges(g.edge_count(), pairs.iter().map(|&(u, v)| g.edge_between(u, v).unwrap()))
    }

    #[test]
    fn classifies_the_five_positions() {
        let g = Graph::complete(8).unwrap();
        let red = set(&g, &[(0, 1), (0, 2), (0, 3)]);
        let cases = [
            (vec![(4, 0), (4, 2), (4, 3)], Some(Position::One)),
            (vec![(4, 2), (4, 3), (4, 5)], Some(Position::Two)),
            (vec![(4, 0), (4, 3), (4, 5)], Some(Position::Three)),
            (vec![(0, 4), (0, 5), (0, 6)], Some(Position::Four)),
            (vec![(4, 3), (4, 5), (4, 6)], Some(Position::Five)),
            (vec![(1, 2), (1, 3), (1, 4)], None),
            (vec![(4, 5), (4, 6), (4, 7)], None),
            (vec![(4, 0), (4, 5), (4, 6)], None),
            (vec![(4, 1), (4, 2), (4, 3)], None),
        ];
        for (blue, want) in cases {
            assert_eq!(classify(&g, &red, &set(&g, &blue)), want, "{blue:?}");
        }
    }

    #[test]
    fn position_one_wins_on_the_next_move() {
        let g = Graph::complete(6).unwrap();
        let red = set(&g, &[(0, 1), (0, 2), (0, 3)]);
        let blue = set(&g, &[(4, 0), (4, 2), (4, 3)]);
        let a = forcing(&g, &red, &blue, 1, &[]).unwrap();
        assert_eq!(g.edge(a), (2, 3));
    }

    #[test]
    fn position_four_answer_to_the_joining_edge() {
        // red star at 0 and path 4-5-6; blue star at 0 and path 1-2-3
        let g = Graph::complete(7).unwrap();
        let mut red = set(&g, &[(0, 1), (0, 2), (0, 3), (4, 5), (5, 6)]);
        let blue = set(&g, &[(0, 4), (0, 5), (0, 6), (1, 2), (2, 3)]);
        red.insert(g.edge_between(2, 5).unwrap());
        // joining the middle vertices is copied by joining 2 to a blue leaf
        assert!(is_valid_reply(&g, &red, &blue, g.edge_between(2, 4).unwrap()));
        red.remove(g.edge_between(2, 5).unwrap());
        assert!(forcing(&g, &red, &blue, 2, &[]).is_some());
    }
}
