//! Plays a fixed strategy against every move sequence of the other side.

use crate::error::Result;
use crate::exec::{par_map, Exec};
use crate::game::{Outcome, Player, Referee, Strategy, Variant};
use crate::graph::Graph;

/// Builds a fresh instance of the strategy under test.
pub type Factory<'a> = dyn Fn() -> Result<Box<dyn Strategy>> + Sync + 'a;

/// Summary of a full opponent tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeReport {
    /// Finished games, one per opponent move sequence.
    pub leaves: u64,
    pub a_wins: u64,
    pub b_wins: u64,
    /// Rounds survived in the leaf that is worst for the tested side.
    pub worst: usize,
    /// Opponent moves (0-based) leading to `worst`.
    pub worst_line: Vec<usize>,
}

impl TreeReport {
    fn merge(&mut self, other: TreeReport, side: Player) {
        let better = match side {
            Player::A => other.worst > self.worst,
            Player::B => other.worst < self.worst,
        };
        if self.leaves == 0 || (other.leaves > 0 && better) {
            self.worst = other.worst;
            self.worst_line = other.worst_line;
        }
        self.leaves += other.leaves;
        self.a_wins += other.a_wins;
        self.b_wins += other.b_wins;
    }

    fn leaf(out: Outcome, line: &[usize]) -> TreeReport {
        TreeReport {
            leaves: 1,
            a_wins: u64::from(out.winner == Some(Player::A)),
            b_wins: u64::from(out.winner == Some(Player::B)),
            worst: out.survived_rounds,
            worst_line: line.to_vec(),
        }
    }
}

struct Tree<'a> {
    g: &'a Graph,
    variant: Variant,
    side: Player,
    make: &'a Factory<'a>,
}

enum Node<'g> {
    Leaf(Outcome),
    Branch(Referee<'g>),
}

impl<'a> Tree<'a> {
    /// Replays `line` against a fresh strategy up to the next opponent choice.
    fn walk(&self, line: &[usize]) -> Result<Node<'a>> {
        let mut strat = (self.make)()?;
        let mut referee = Referee::new(self.g, self.variant, None);
        let mut next = line.iter();
        loop {
            if referee.finished() {
                return Ok(Node::Leaf(referee.end_outcome()));
            }
            let mover = referee.view().to_move();
            let e = if mover == self.side {
                strat.choose(&referee.view())?
            } else {
                match next.next() {
                    Some(&e) => e,
                    None => return Ok(Node::Branch(referee)),
                }
            };
            let out = match mover {
                Player::A => referee.apply_a(e),
                Player::B => referee.apply_b(e),
            };
            if let Some(out) = out {
                return Ok(Node::Leaf(out));
            }
        }
    }

    fn children(&self, referee: &Referee<'a>, line: &[usize]) -> (TreeReport, Vec<Vec<usize>>) {
        let mut done = TreeReport::default();
        let mut open = Vec::new();
        for e in referee.view().free_edges() {
            let mut next = line.to_vec();
            next.push(e);
            let mut probe = referee.clone();
            let out = match self.side {
                Player::A => probe.apply_b(e),
                Player::B => probe.apply_a(e),
            };
            match out {
                Some(out) => done.merge(TreeReport::leaf(out, &next), self.side),
                None => open.push(next),
            }
        }
        (done, open)
    }

    fn explore(&self, line: Vec<usize>) -> Result<TreeReport> {
        match self.walk(&line)? {
            Node::Leaf(out) => Ok(TreeReport::leaf(out, &line)),
            Node::Branch(referee) => {
                let (mut report, open) = self.children(&referee, &line);
                for next in open {
                    report.merge(self.explore(next)?, self.side);
                }
                Ok(report)
            }
        }
    }

    fn explore_root(&self, exec: Exec) -> Result<TreeReport> {
        let referee = match self.walk(&[])? {
            Node::Leaf(out) => return Ok(TreeReport::leaf(out, &[])),
            Node::Branch(r) => r,
        };
        let (mut report, open) = self.children(&referee, &[]);
        for sub in par_map(exec, &open, |line| self.explore(line.clone())) {
            report.merge(sub?, self.side);
        }
        Ok(report)
    }
}

/// Runs the `A` strategy built by `make` against every legal `B` sequence.
/// `worst` is the longest survival `B` achieves.
pub fn against_every_b(g: &Graph, variant: Variant, exec: Exec, make: &Factory<'_>) -> Result<TreeReport> {
    Tree { g, variant, side: Player::A, make }.explore_root(exec)
}

/// Runs the `B` strategy built by `make` against every legal `A` sequence.
/// `worst` is the shortest survival.
pub fn against_every_a(g: &Graph, variant: Variant, exec: Exec, make: &Factory<'_>) -> Result<TreeReport> {
    Tree { g, variant, side: Player::B, make }.explore_root(exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::Mirror;

    #[test]
    fn mirror_survives_every_a_on_p4() {
        let g = Graph::path(4).unwrap();
        let make = || -> Result<Box<dyn Strategy>> { Ok(Box::new(Mirror::for_graph(&g)?)) };
        let report = against_every_a(&g, Variant::Sym, Exec::Sequential, &make).unwrap();
        // A has 4 * 2 move sequences; mirror answers each
        assert_eq!(report.leaves, 8);
        assert_eq!((report.b_wins, report.worst), (8, 2));
    }
}
