//! Strategies addressable by name.

use super::{
    AdversarialRandom, BipartiteB, BreakerComplete, BreakerCycle, BreakerPath, GreedyCopy, Mirror, RandomPlayer,
    ThresholdDuplicator, Translated,
};
use crate::error::{Error, Result};
use crate::game::{Player, Strategy, Variant};
use crate::graph::{Family, Graph};
use crate::solver::optimal_strategy;

/// Every name accepted by [`build_strategy`].
pub const STRATEGY_NAMES: &[&str] = &[
    "mirror",
    "translated",
    "breaker-path",
    "breaker-cycle",
    "breaker-kn",
    "bipartite-b",
    "optimal",
    "random",
    "greedy-copy",
    "adversarial-random",
];

/// Which sides a named strategy can play.
pub fn strategy_sides(name: &str) -> Option<&'static [Player]> {
    Some(match name {
        "mirror" | "translated" | "bipartite-b" | "greedy-copy" => &[Player::B],
        "breaker-path" | "breaker-cycle" | "breaker-kn" | "adversarial-random" => &[Player::A],
        "optimal" | "random" => &[Player::A, Player::B],
        _ => return None,
    })
}

/// `B` on an odd `P_n` or `C_n` translated from mirror play on the next
/// longer path or cycle through the threshold duplicator.
pub fn translated_for(g: &Graph) -> Result<Translated> {
    let n = g.edge_count();
    let (g0, dup) = match g.family() {
        Family::Path => (Graph::path(n + 1)?, ThresholdDuplicator::for_paths(n, n - 1)),
        Family::Cycle => (Graph::cycle(n + 1)?, ThresholdDuplicator::for_cycles(n + 1, n)),
        _ => return Err(Error::Parameter(format!("translated play needs a path or cycle, got {}", g.name()))),
    };
    if n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("translated play needs an odd length, got {}", g.name())));
    }
    let mirror = Mirror::for_graph(&g0)?;
    Translated::new(Box::new(dup), Box::new(mirror), &g0, g)
}

/// Builds the named strategy for `side` on `g`.
pub fn build_strategy(name: &str, g: &Graph, side: Player, variant: Variant, seed: u64) -> Result<Box<dyn Strategy>> {
    let sides = strategy_sides(name)
        .ok_or_else(|| Error::Parameter(format!("unknown strategy {name:?}; known: {}", STRATEGY_NAMES.join(", "))))?;
    if !sides.contains(&side) {
        return Err(Error::Parameter(format!("strategy {name} cannot play {side:?}")));
    }
    Ok(match name {
        "mirror" => Box::new(Mirror::for_graph(g)?),
        "translated" => Box::new(translated_for(g)?),
        "breaker-path" => Box::new(BreakerPath::new(g)?),
        "breaker-cycle" => Box::new(BreakerCycle::new(g)?),
        "breaker-kn" => Box::new(BreakerComplete::new(g)?),
        "bipartite-b" => Box::new(BipartiteB::new(g)?),
        "optimal" => Box::new(optimal_strategy(g, side, variant)?),
        "random" => Box::new(RandomPlayer::new(side, seed)),
        "greedy-copy" => Box::new(GreedyCopy::new(g)),
        "adversarial-random" => Box::new(AdversarialRandom::new(seed)),
        _ => unreachable!("sides checked above"),
    })
}

/// The breaker meant for `g`'s family.
pub fn breaker_name(g: &Graph) -> Option<&'static str> {
    match g.family() {
        Family::Path => Some("breaker-path"),
        Family::Cycle => Some("breaker-cycle"),
        Family::Complete => Some("breaker-kn"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds_somewhere() {
        let p9 = Graph::path(9).unwrap();
        let p4 = Graph::path(4).unwrap();
        let c9 = Graph::cycle(9).unwrap();
        let k6 = Graph::complete(6).unwrap();
        let k35 = Graph::complete_bipartite(3, 5).unwrap();
        let cases = [
            ("mirror", &p4, Player::B),
            ("translated", &p9, Player::B),
            ("breaker-path", &p9, Player::A),
            ("breaker-cycle", &c9, Player::A),
            ("breaker-kn", &k6, Player::A),
            ("bipartite-b", &k35, Player::B),
            ("optimal", &p9, Player::A),
            ("random", &k6, Player::B),
            ("greedy-copy", &p4, Player::B),
            ("adversarial-random", &k6, Player::A),
        ];
        assert_eq!(cases.len(), STRATEGY_NAMES.len());
        for (name, g, side) in cases {
            let s = build_strategy(name, g, side, Variant::Sym, 0).unwrap();
            assert!(!s.name().is_empty(), "{name}");
        }
    }

    #[test]
    fn rejects_wrong_side_and_unknown_names() {
        let p4 = Graph::path(4).unwrap();
        assert!(build_strategy("mirror", &p4, Player::A, Variant::Sym, 0).is_err());
        assert!(build_strategy("nope", &p4, Player::A, Variant::Sym, 0).is_err());
        assert!(translated_for(&p4).is_err());
    }
}
