//! Exact values of the EF game by iterative deepening over sets of picked pairs.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;

use crate::exec::{par_all, Exec};
use crate::game::{is_partial_isomorphism, Side};
use crate::graph::{subgraphs_isomorphic, EdgeSet, Family, Graph};

/// True iff `g0` and `g1` are isomorphic graphs.
pub fn graphs_isomorphic(g0: &Graph, g1: &Graph) -> bool {
    if g0.vertex_count() != g1.vertex_count() || g0.edge_count() != g1.edge_count() {
        return false;
    }
    let shift = g0.vertex_count();
    let mut edges = g0.edges().to_vec();
    edges.extend(g1.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    let union = Graph::new(2 * shift, edges, Family::Other).expect("disjoint union is simple");
    let m = g0.edge_count();
    let e0 = EdgeSet::from_edges(2 * m, 0..m);
    let e1 = EdgeSet::from_edges(2 * m, m..2 * m);
    subgraphs_isomorphic(&union, &e0, &e1)
}

type Pairs = Vec<(u8, u8)>;

pub(crate) struct EfSearch {
    pub g0: Graph,
    pub g1: Graph,
    pub limit: usize,
    pub isomorphic: bool,
    exec: Exec,
    memo: DashMap<(Pairs, u8), bool>,
    expanded: AtomicU64,
    hits: AtomicU64,
}

fn insert_pair(pairs: &Pairs, u: usize, v: usize) -> Pairs {
    let mut next = pairs.clone();
    let p = (u as u8, v as u8);
    if let Err(i) = next.binary_search(&p) {
        next.insert(i, p);
    }
    next
}

fn as_usize(pairs: &Pairs) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(u, v)| (u as usize, v as usize)).collect()
}

impl EfSearch {
    pub fn new(g0: &Graph, g1: &Graph, exec: Exec) -> Self {
        EfSearch {
            g0: g0.clone(),
            g1: g1.clone(),
            limit: g0.vertex_count() + g1.vertex_count(),
            isomorphic: graphs_isomorphic(g0, g1),
            exec,
            memo: DashMap::new(),
            expanded: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    pub fn counters(&self) -> (u64, u64) {
        (self.expanded.load(Ordering::Relaxed), self.hits.load(Ordering::Relaxed))
    }

    /// Spoiler picks that are not repeats. Repeats only burn a round.
    fn fresh_moves(&self, pairs: &Pairs) -> Vec<(Side, usize)> {
        let mut out = Vec::new();
        for u in 0..self.g0.vertex_count() {
            if !pairs.iter().any(|p| p.0 as usize == u) {
                out.push((Side::Zero, u));
            }
        }
        for v in 0..self.g1.vertex_count() {
            if !pairs.iter().any(|p| p.1 as usize == v) {
                out.push((Side::One, v));
            }
        }
        out
    }

    /// Duplicator answers to `(side, v)` that keep a partial isomorphism, with the new pair sets.
    fn answers(&self, pairs: &Pairs, side: Side, v: usize) -> Vec<(usize, Pairs)> {
        let other = match side {
            Side::Zero => &self.g1,
            Side::One => &self.g0,
        };
        let base = as_usize(pairs);
        (0..other.vertex_count())
            .filter_map(|w| {
                let (u0, u1) = if side == Side::Zero { (v, w) } else { (w, v) };
                let mut all = base.clone();
                all.push((u0, u1));
                is_partial_isomorphism(&self.g0, &self.g1, &all).then(|| (w, insert_pair(pairs, u0, u1)))
            })
            .collect()
    }

    /// Can the duplicator survive `r` more rounds from `pairs`?
    fn survives(&self, pairs: &Pairs, r: usize) -> bool {
        if r == 0 || (self.isomorphic && pairs.is_empty()) {
            return true;
        }
        let key = (pairs.clone(), r as u8);
        if let Some(v) = self.memo.get(&key).map(|v| *v) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v;
        }
        self.expanded.fetch_add(1, Ordering::Relaxed);
        let ok = self
            .fresh_moves(pairs)
            .into_iter()
            .all(|(side, v)| self.answers(pairs, side, v).iter().any(|(_, q)| self.survives(q, r - 1)));
        self.memo.insert(key, ok);
        ok
    }

    /// Rounds the duplicator survives from `pairs` with `rounds_left` still to play.
    pub fn value_from(&self, pairs: &[(usize, usize)], rounds_left: usize) -> usize {
        let mut key: Pairs = pairs.iter().map(|&(u, v)| (u as u8, v as u8)).collect();
        key.sort_unstable();
        key.dedup();
        let mut r = 0;
        while r < rounds_left && self.survives(&key, r + 1) {
            r += 1;
        }
        r
    }

    /// Exact game value from the empty position.
    pub fn root_value(&self) -> usize {
        if self.isomorphic {
            return self.limit;
        }
        let root: Pairs = Vec::new();
        let moves = self.fresh_moves(&root);
        let mut r = 0;
        while r < self.limit
            && par_all(self.exec, &moves, |&(side, v)| {
                self.answers(&root, side, v).iter().any(|(_, q)| self.survives(q, r))
            })
        {
            r += 1;
        }
        r
    }

    /// Spoiler's optimal pick, first in vertex order on ties.
    pub fn best_spoiler(&self, pairs: &[(usize, usize)], rounds_left: usize) -> Option<(Side, usize)> {
        let mut key: Pairs = pairs.iter().map(|&(u, v)| (u as u8, v as u8)).collect();
        key.sort_unstable();
        key.dedup();
        let mut best: Option<(usize, (Side, usize))> = None;
        for (side, v) in self.fresh_moves(&key) {
            let val = self
                .answers(&key, side, v)
                .iter()
                .map(|(_, q)| 1 + self.value_from(&as_usize(q), rounds_left.saturating_sub(1)))
                .max()
                .unwrap_or(0)
                .min(rounds_left);
            if best.is_none_or(|(b, _)| val < b) {
                best = Some((val, (side, v)));
            }
        }
        best.map(|(_, m)| m)
    }

    /// Duplicator's optimal answer, lowest vertex on ties. `None` if every answer loses.
    pub fn best_duplicator(&self, pairs: &[(usize, usize)], side: Side, v: usize, rounds_left: usize) -> Option<usize> {
        let mut key: Pairs = pairs.iter().map(|&(u, v)| (u as u8, v as u8)).collect();
        key.sort_unstable();
        key.dedup();
        let mut best: Option<(usize, usize)> = None;
        for (w, q) in self.answers(&key, side, v) {
            let val = self.value_from(&as_usize(&q), rounds_left.saturating_sub(1));
            if best.is_none_or(|(b, _)| val > b) {
                best = Some((val, w));
            }
        }
        best.map(|(_, w)| w)
    }
}
