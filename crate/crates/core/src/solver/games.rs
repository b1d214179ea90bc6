//! `Sym(G)` and `Sym+(G)` as round games over edge masks.

use std::collections::HashMap;

use super::search::RoundGame;
use crate::exec::{par_map, Exec};
use crate::game::WitnessFrontier;
use crate::graph::{subgraph_code, CanonicalKey, EdgeSet, Graph, PositionCanonizer};

const NO_CLASS: u32 = u32::MAX;

/// Isomorphism class of every edge subset of at most `max_size` edges.
pub(crate) struct ClassTable {
    classes: Vec<u32>,
}

impl ClassTable {
    pub fn new(g: &Graph, max_size: usize, exec: Exec) -> Self {
        let m = g.edge_count();
        let masks: Vec<u64> = (0..1u64 << m).filter(|x| x.count_ones() as usize <= max_size).collect();
        let codes = par_map(exec, &masks, |&x| subgraph_code(g, &EdgeSet::from_mask(m, x)));
        let mut ids = HashMap::new();
        let mut classes = vec![NO_CLASS; 1 << m];
        for (x, code) in masks.into_iter().zip(codes) {
            let next = ids.len() as u32;
            classes[x as usize] = *ids.entry(code).or_insert(next);
        }
        ClassTable { classes }
    }

    #[inline]
    pub fn same(&self, x: u64, y: u64) -> bool {
        let c = self.classes[x as usize];
        c != NO_CLASS && c == self.classes[y as usize]
    }
}

pub(crate) fn full_mask(g: &Graph) -> u64 {
    if g.edge_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.edge_count()) - 1
    }
}

pub(crate) struct SymGame {
    pub all: u64,
    pub classes: ClassTable,
    pub canon: PositionCanonizer,
}

impl SymGame {
    pub fn new(g: &Graph, reduce: bool, exec: Exec) -> Self {
        SymGame {
            all: full_mask(g),
            classes: ClassTable::new(g, g.edge_count() / 2, exec),
            canon: PositionCanonizer::new(g, reduce),
        }
    }
}

impl RoundGame for SymGame {
    type Pos = (u64, u64);
    type Key = CanonicalKey;

    fn root(&self) -> Self::Pos {
        (0, 0)
    }

    fn key(&self, p: &Self::Pos) -> CanonicalKey {
        self.canon.key(p.0, p.1)
    }

    fn free(&self, p: &Self::Pos) -> u64 {
        self.all & !(p.0 | p.1)
    }

    fn step(&self, p: &Self::Pos, a: usize, b: usize) -> Option<Self::Pos> {
        let next = (p.0 | 1 << a, p.1 | 1 << b);
        self.classes.same(next.0, next.1).then_some(next)
    }
}

#[derive(Clone)]
pub(crate) struct PlusPos {
    pub red: u64,
    pub blue: u64,
    pub frontier: WitnessFrontier,
}

pub(crate) struct PlusGame {
    pub graph: Graph,
    pub all: u64,
}

impl PlusGame {
    pub fn new(g: &Graph) -> Self {
        PlusGame { graph: g.clone(), all: full_mask(g) }
    }

    /// Position reached by a move list `a_1, b_1, a_2, ...` that `B` survived.
    pub fn replay(&self, history: &[usize]) -> PlusPos {
        let mut p = self.root();
        for pair in history.chunks_exact(2) {
            p = PlusPos {
                red: p.red | 1 << pair[0],
                blue: p.blue | 1 << pair[1],
                frontier: p.frontier.extend(&self.graph, pair[0], pair[1]),
            };
        }
        p
    }
}

impl RoundGame for PlusGame {
    type Pos = PlusPos;
    type Key = (u64, u64, WitnessFrontier);

    fn root(&self) -> PlusPos {
        PlusPos { red: 0, blue: 0, frontier: WitnessFrontier::initial(&self.graph) }
    }

    fn key(&self, p: &PlusPos) -> Self::Key {
        (p.red, p.blue, p.frontier.clone())
    }

    fn free(&self, p: &PlusPos) -> u64 {
        self.all & !(p.red | p.blue)
    }

    fn step(&self, p: &PlusPos, a: usize, b: usize) -> Option<PlusPos> {
        let frontier = p.frontier.extend(&self.graph, a, b);
        (!frontier.is_empty()).then(|| PlusPos { red: p.red | 1 << a, blue: p.blue | 1 << b, frontier })
    }
}

/// Mask of a move list's `A` or `B` edges.
pub(crate) fn side_mask(history: &[usize], offset: usize) -> u64 {
    history.iter().skip(offset).step_by(2).fold(0, |m, &e| m | 1 << e)
}
