//! The Ehrenfeucht–Fraïssé game on two graphs.

use serde::{Deserialize, Serialize};

use super::{Outcome, Player, Reason};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Zero => Side::One,
            Side::One => Side::Zero,
        }
    }
}

/// Position of an EF game. `pairs[i] = (u_i, v_i)` with `u_i` in `g0` and `v_i` in `g1`.
#[derive(Clone, Copy)]
pub struct EfView<'a> {
    pub g0: &'a Graph,
    pub g1: &'a Graph,
    pub pairs: &'a [(usize, usize)],
    pub round_limit: usize,
}

impl<'a> EfView<'a> {
    pub fn graph(&self, side: Side) -> &'a Graph {
        match side {
            Side::Zero => self.g0,
            Side::One => self.g1,
        }
    }

    /// The partner of `v` on `side` if `v` was already picked.
    pub fn partner(&self, side: Side, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| match side {
            Side::Zero if a == v => Some(b),
            Side::One if b == v => Some(a),
            _ => None,
        })
    }

    pub fn round(&self) -> usize {
        self.pairs.len()
    }
}

pub trait Spoiler: Send {
    fn name(&self) -> String;
    /// Picks a graph and a vertex in it.
    fn choose(&mut self, view: &EfView<'_>) -> Result<(Side, usize)>;
}

pub trait Duplicator: Send {
    fn name(&self) -> String;
    /// Answers the spoiler's vertex `v` on `side` with a vertex of the other graph.
    fn respond(&mut self, view: &EfView<'_>, side: Side, v: usize) -> Result<usize>;
}

pub type EfOutcome = Outcome;

/// True iff the pairing is a well-defined bijection on its support that preserves adjacency.
pub fn is_partial_isomorphism(g0: &Graph, g1: &Graph, pairs: &[(usize, usize)]) -> bool {
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if u >= g0.vertex_count() || v >= g1.vertex_count() {
            return false;
        }
        for &(x, y) in &pairs[..i] {
            if (u == x) != (v == y) || g0.adjacent(u, x) != g1.adjacent(v, y) {
                return false;
            }
        }
    }
    true
}

/// One EF round: the spoiler's pick and the duplicator's answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EfRound {
    pub side: Side,
    pub spoiler_vertex: usize,
    pub duplicator_vertex: usize,
}

/// Plays the EF game. The spoiler is `A` and the duplicator is `B`.
///
/// The round limit defaults to `|V(g0)| + |V(g1)|`. Reaching it is a
/// duplicator win. Out-of-range vertices lose for the player who chose them.
pub fn play_ef(
    g0: &Graph,
    g1: &Graph,
    spoiler: &mut dyn Spoiler,
    duplicator: &mut dyn Duplicator,
    round_limit: Option<usize>,
) -> Result<(EfOutcome, Vec<EfRound>)> {
    let limit = round_limit.unwrap_or(g0.vertex_count() + g1.vertex_count());
    let mut pairs = Vec::with_capacity(limit);
    let mut log = Vec::with_capacity(limit);
    while pairs.len() < limit {
        let view = EfView { g0, g1, pairs: &pairs, round_limit: limit };
        let (side, v) = spoiler.choose(&view)?;
        if v >= view.graph(side).vertex_count() {
            let out = Outcome { survived_rounds: pairs.len(), winner: Some(Player::B), reason: Reason::IllegalMove };
            return Ok((out, log));
        }
        let w = duplicator.respond(&view, side, v)?;
        log.push(EfRound { side, spoiler_vertex: v, duplicator_vertex: w });
        if w >= view.graph(side.other()).vertex_count() {
            let out = Outcome { survived_rounds: pairs.len(), winner: Some(Player::A), reason: Reason::IllegalMove };
            return Ok((out, log));
        }
        let before = pairs.len();
        pairs.push(if side == Side::Zero { (v, w) } else { (w, v) });
        if !is_partial_isomorphism(g0, g1, &pairs) {
            let out = Outcome { survived_rounds: before, winner: Some(Player::A), reason: Reason::IsomorphismBroken };
            return Ok((out, log));
        }
    }
    Ok((Outcome { survived_rounds: limit, winner: Some(Player::B), reason: Reason::RoundLimit }, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fixed(Vec<(Side, usize)>, usize);
    impl Spoiler for Fixed {
        fn name(&self) -> String {
            "fixed".into()
        }
        fn choose(&mut self, _: &EfView<'_>) -> Result<(Side, usize)> {
            self.1 += 1;
            Ok(self.0[(self.1 - 1) % self.0.len()])
        }
    }

    struct Copy;
    impl Duplicator for Copy {
        fn name(&self) -> String {
            "copy".into()
        }
        fn respond(&mut self, view: &EfView<'_>, side: Side, v: usize) -> Result<usize> {
            Ok(view.partner(side, v).unwrap_or(v))
        }
    }

    #[test]
    fn partial_isomorphism_checks() {
        let p3 = Graph::path(3).unwrap();
        let p4 = Graph::path(4).unwrap();
        assert!(is_partial_isomorphism(&p3, &p4, &[(0, 0), (1, 1)]));
        assert!(!is_partial_isomorphism(&p3, &p4, &[(0, 0), (1, 2)]));
        assert!(!is_partial_isomorphism(&p3, &p4, &[(0, 0), (0, 1)]));
        assert!(is_partial_isomorphism(&p3, &p4, &[(0, 0), (0, 0)]));
    }

    #[test]
    fn copying_survives_on_identical_graphs() {
        let k2 = Graph::complete(2).unwrap();
        let mut s = Fixed(vec![(Side::Zero, 0), (Side::One, 1), (Side::Zero, 0)], 0);
        let (out, log) = play_ef(&k2, &k2, &mut s, &mut Copy, None).unwrap();
        assert_eq!(out.survived_rounds, 4);
        assert_eq!(out.winner, Some(Player::B));
        assert_eq!(log.len(), 4);
    }

    #[test]
    fn spoiler_wins_on_p2_p3() {
        // P_2 has 3 vertices; spoiler takes both ends of P_2's partner P_3 path
        let a = Graph::path(2).unwrap();
        let b = Graph::path(3).unwrap();
        let mut s = Fixed(vec![(Side::One, 0), (Side::One, 3)], 0);
        let (out, _) = play_ef(&a, &b, &mut s, &mut Copy, None).unwrap();
        assert_eq!(out.winner, Some(Player::A));
    }
}
