//! Referee and play loops for `Sym(G)`, `Sym+(G)` and the EF game.

mod ef;
mod interactive;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{subgraphs_isomorphic, EdgeSet, Graph, GraphLiteral};

pub use ef::{
    is_partial_isomorphism, play_ef, Duplicator, EfOutcome, EfView, Side, Spoiler,
};
pub use interactive::interactive_play;
pub use witness::WitnessFrontier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `B` keeps the red and blue subgraphs isomorphic after every round.
    Sym,
    /// `B` must also extend one isomorphism from round to round.
    SymPlus,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Sym => "sym",
            Variant::SymPlus => "sym+",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Variant::Sym),
            "sym+" | "sym_plus" | "symplus" => Ok(Variant::SymPlus),
            _ => Err(Error::Parameter(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    IsomorphismBroken,
    AllEdgesColored,
    RoundLimit,
    IllegalMove,
}

/// Result of one game. `winner` is `None` when a round limit below the
/// natural end stopped the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub survived_rounds: usize,
    pub winner: Option<Player>,
    pub reason: Reason,
}

/// What a strategy sees: the whole visible position and move history.
#[derive(Clone, Copy)]
pub struct GameView<'a> {
    pub graph: &'a Graph,
    pub red: &'a EdgeSet,
    pub blue: &'a EdgeSet,
    /// Edges in play order: `a_1, b_1, a_2, b_2, ...`.
    pub history: &'a [usize],
    pub variant: Variant,
}

impl<'a> GameView<'a> {
    pub fn to_move(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::A
        } else {
            Player::B
        }
    }

    /// Number of completed rounds.
    pub fn round(&self) -> usize {
        self.history.len() / 2
    }

    pub fn is_free(&self, e: usize) -> bool {
        e < self.graph.edge_count() && !self.red.contains(e) && !self.blue.contains(e)
    }

    pub fn free_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.edge_count()).filter(|&e| self.is_free(e))
    }

    pub fn a_moves(&self) -> impl Iterator<Item = usize> + '_ {
        self.history.iter().step_by(2).copied()
    }

    pub fn b_moves(&self) -> impl Iterator<Item = usize> + '_ {
        self.history.iter().skip(1).step_by(2).copied()
    }

    pub fn last_move(&self) -> Option<usize> {
        self.history.last().copied()
    }
}

/// A move-selection rule for one side of `Sym(G)`.
///
/// Implementations are stateful per game and deterministic: the same history
/// and construction seed always produce the same edge.
pub trait Strategy: Send {
    fn name(&self) -> String;
    fn choose(&mut self, view: &GameView<'_>) -> Result<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based edge colored by `A`.
    pub a_edge: usize,
    /// 1-based edge colored by `B`, absent when the round ended early.
    pub b_edge: Option<usize>,
    pub iso_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub illegal: Option<Player>,
}

/// Replayable record of one game. Edges are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub graph: GraphLiteral,
    pub variant: Variant,
    pub seed: u64,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
}

/// Mutable referee state shared by the automatic and interactive loops.
#[derive(Clone)]
pub struct Referee<'g> {
    pub graph: &'g Graph,
    pub variant: Variant,
    pub red: EdgeSet,
    pub blue: EdgeSet,
    pub history: Vec<usize>,
    frontier: WitnessFrontier,
    limit: usize,
    rounds: Vec<RoundRecord>,
}

impl<'g> Referee<'g> {
    pub fn new(graph: &'g Graph, variant: Variant, round_limit: Option<usize>) -> Self {
        let full = graph.edge_count() / 2;
        Referee {
            graph,
            variant,
            red: graph.empty_edge_set(),
            blue: graph.empty_edge_set(),
            history: Vec::new(),
            frontier: WitnessFrontier::initial(graph),
            limit: round_limit.map_or(full, |l| l.min(full)),
            rounds: Vec::new(),
        }
    }

    pub fn view(&self) -> GameView<'_> {
        GameView {
            graph: self.graph,
            red: &self.red,
            blue: &self.blue,
            history: &self.history,
            variant: self.variant,
        }
    }

    pub fn completed_rounds(&self) -> usize {
        self.history.len() / 2
    }

    pub fn finished(&self) -> bool {
        self.completed_rounds() >= self.limit
    }

    fn legal(&self, e: usize) -> bool {
        self.view().is_free(e)
    }

    /// Applies `A`'s move. Returns an outcome if the move ends the game.
    pub fn apply_a(&mut self, e: usize) -> Option<Outcome> {
        if !self.legal(e) {
            self.rounds.push(RoundRecord { a_edge: e + 1, b_edge: None, iso_ok: false, illegal: Some(Player::A) });
            return Some(Outcome {
                survived_rounds: self.completed_rounds(),
                winner: Some(Player::B),
                reason: Reason::IllegalMove,
            });
        }
        self.red.insert(e);
        self.history.push(e);
        None
    }

    /// Applies `B`'s move and checks the round. Returns an outcome if the game ends.
    pub fn apply_b(&mut self, e: usize) -> Option<Outcome> {
        let a = *self.history.last().expect("A moves first");
        if !self.legal(e) {
            self.rounds.push(RoundRecord { a_edge: a + 1, b_edge: Some(e + 1), iso_ok: false, illegal: Some(Player::B) });
            return Some(self.a_wins(Reason::IllegalMove));
        }
        self.blue.insert(e);
        self.history.push(e);
        let ok = match self.variant {
            Variant::Sym => subgraphs_isomorphic(self.graph, &self.red, &self.blue),
            Variant::SymPlus => {
                self.frontier = self.frontier.extend(self.graph, a, e);
                !self.frontier.is_empty()
            }
        };
        self.rounds.push(RoundRecord { a_edge: a + 1, b_edge: Some(e + 1), iso_ok: ok, illegal: None });
        if !ok {
            return Some(Outcome {
                survived_rounds: self.completed_rounds() - 1,
                winner: Some(Player::A),
                reason: Reason::IsomorphismBroken,
            });
        }
        self.finished().then(|| self.end_outcome())
    }

    fn a_wins(&self, reason: Reason) -> Outcome {
        Outcome { survived_rounds: self.completed_rounds(), winner: Some(Player::A), reason }
    }

    /// Outcome once the round limit is reached without a break.
    pub fn end_outcome(&self) -> Outcome {
        let full = self.graph.edge_count() / 2;
        let done = self.completed_rounds();
        if done >= full {
            Outcome { survived_rounds: done, winner: Some(Player::B), reason: Reason::AllEdgesColored }
        } else {
            Outcome { survived_rounds: done, winner: None, reason: Reason::RoundLimit }
        }
    }

    pub fn into_transcript(self, seed: u64, outcome: Outcome) -> Transcript {
        Transcript {
            graph: self.graph.to_literal(),
            variant: self.variant,
            seed,
            rounds: self.rounds,
            outcome,
        }
    }
}

/// Plays one game of `Sym(G)` or `Sym+(G)`.
///
/// The round limit defaults to `floor(|E|/2)`. An illegal edge loses the game
/// for the player who chose it. Strategy errors propagate unchanged.
pub fn play_sym(
    g: &Graph,
    strat_a: &mut dyn Strategy,
    strat_b: &mut dyn Strategy,
    variant: Variant,
    round_limit: Option<usize>,
    seed: u64,
) -> Result<(Outcome, Transcript)> {
    let mut referee = Referee::new(g, variant, round_limit);
    let outcome = loop {
        if referee.finished() {
            break referee.end_outcome();
        }
        let a = strat_a.choose(&referee.view())?;
        if let Some(out) = referee.apply_a(a) {
            break out;
        }
        let b = strat_b.choose(&referee.view())?;
        if let Some(out) = referee.apply_b(b) {
            break out;
        }
    };
    Ok((outcome, referee.into_transcript(seed, outcome)))
}

/// Plays back a recorded move list.
pub struct Scripted {
    moves: Vec<usize>,
    next: usize,
}

impl Scripted {
    /// `moves` are 0-based edges in the order this side plays them.
    pub fn new(moves: Vec<usize>) -> Self {
        Scripted { moves, next: 0 }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn choose(&mut self, _view: &GameView<'_>) -> Result<usize> {
        let e = *self
            .moves
            .get(self.next)
            .ok_or_else(|| Error::Parameter("script exhausted".into()))?;
        self.next += 1;
        Ok(e)
    }
}

/// Re-runs a transcript through the referee and returns the outcome it yields.
pub fn replay(t: &Transcript) -> Result<Outcome> {
    let g = Graph::from_literal(&t.graph)?;
    let a_moves = t.rounds.iter().map(|r| r.a_edge - 1).collect();
    let b_moves = t.rounds.iter().filter_map(|r| r.b_edge.map(|e| e - 1)).collect();
    let mut sa = Scripted::new(a_moves);
    let mut sb = Scripted::new(b_moves);
    let limit = (t.outcome.reason == Reason::RoundLimit).then_some(t.outcome.survived_rounds);
    Ok(play_sym(&g, &mut sa, &mut sb, t.variant, limit, t.seed)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_always_survives_one_round() {
        let g = Graph::path(2).unwrap();
        for (a, b) in [(0, 1), (1, 0)] {
            let (out, _) =
                play_sym(&g, &mut Scripted::new(vec![a]), &mut Scripted::new(vec![b]), Variant::Sym, None, 0).unwrap();
            assert_eq!(out, Outcome { survived_rounds: 1, winner: Some(Player::B), reason: Reason::AllEdgesColored });
        }
    }

    #[test]
    fn broken_round_and_replay() {
        // P5 (1-based): A 3, B 1, A 2, B 5 -> red path vs blue matching
        let g = Graph::path(5).unwrap();
        let (out, t) = play_sym(
            &g,
            &mut Scripted::new(vec![2, 1]),
            &mut Scripted::new(vec![0, 4]),
            Variant::Sym,
            None,
            7,
        )
        .unwrap();
        assert_eq!(out.reason, Reason::IsomorphismBroken);
        assert_eq!(out.survived_rounds, 1);
        assert_eq!(t.rounds.len(), 2);
        assert!(!t.rounds[1].iso_ok);
        assert_eq!(replay(&t).unwrap(), out);
        let json = serde_json::to_string(&t).unwrap();
        let back: Transcript = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn illegal_move_loses() {
        let g = Graph::path(4).unwrap();
        let (out, t) =
            play_sym(&g, &mut Scripted::new(vec![0]), &mut Scripted::new(vec![0]), Variant::Sym, None, 0).unwrap();
        assert_eq!(out.winner, Some(Player::A));
        assert_eq!(out.reason, Reason::IllegalMove);
        assert_eq!(t.rounds[0].illegal, Some(Player::B));
        let (out, _) =
            play_sym(&g, &mut Scripted::new(vec![9]), &mut Scripted::new(vec![]), Variant::Sym, None, 0).unwrap();
        assert_eq!(out.winner, Some(Player::B));
    }

    #[test]
    fn round_limit_is_undecided() {
        let g = Graph::path(6).unwrap();
        let (out, t) =
            play_sym(&g, &mut Scripted::new(vec![0]), &mut Scripted::new(vec![5]), Variant::Sym, Some(1), 0).unwrap();
        assert_eq!(out, Outcome { survived_rounds: 1, winner: None, reason: Reason::RoundLimit });
        assert_eq!(replay(&t).unwrap(), out);
    }
}
