//! Memoized search over round-based games where `A` moves, then `B` answers.

use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;

use crate::exec::{par_all, par_any, par_map, Exec};

/// A round game: `A` picks a free edge, `B` picks another, and the pair either
/// keeps `B` alive (`Some(next)`) or ends the game.
pub(crate) trait RoundGame: Sync {
    type Pos: Clone + Send + Sync;
    type Key: Hash + Eq + Clone + Send + Sync;

    fn root(&self) -> Self::Pos;
    fn key(&self, p: &Self::Pos) -> Self::Key;
    fn free(&self, p: &Self::Pos) -> u64;
    fn step(&self, p: &Self::Pos, a: usize, b: usize) -> Option<Self::Pos>;
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            e
        })
    })
}

pub(crate) fn rounds_left(free: u64) -> usize {
    free.count_ones() as usize / 2
}

pub(crate) struct Search<G: RoundGame> {
    pub game: G,
    pub exec: Exec,
    exact: DashMap<G::Key, u8>,
    survive: DashMap<(G::Key, u8), bool>,
    force: DashMap<(G::Key, u8), bool>,
    expanded: AtomicU64,
    hits: AtomicU64,
}

impl<G: RoundGame> Search<G> {
    pub fn new(game: G, exec: Exec) -> Self {
        Search {
            game,
            exec,
            exact: DashMap::new(),
            survive: DashMap::new(),
            force: DashMap::new(),
            expanded: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    pub fn counters(&self) -> (u64, u64) {
        (self.expanded.load(Ordering::Relaxed), self.hits.load(Ordering::Relaxed))
    }

    fn expand(&self) {
        self.expanded.fetch_add(1, Ordering::Relaxed);
    }

    fn hit(&self) {
        self.hits.fetch_add(1, Ordering::Relaxed);
    }

    /// Rounds `B` still survives from `p` under optimal play by both sides.
    pub fn value(&self, p: &G::Pos) -> usize {
        let free = self.game.free(p);
        let left = rounds_left(free);
        if left == 0 {
            return 0;
        }
        let key = self.game.key(p);
        if let Some(v) = self.exact.get(&key).map(|v| *v) {
            self.hit();
            return v as usize;
        }
        self.expand();
        let mut best = left;
        for a in bits(free) {
            best = best.min(self.reply_value(p, free, a, best));
            if best == 0 {
                break;
            }
        }
        self.exact.insert(key, best as u8);
        best
    }

    /// `B`'s best total after `A` plays `a`, stopping early once it reaches `cap`.
    pub fn reply_value(&self, p: &G::Pos, free: u64, a: usize, cap: usize) -> usize {
        let mut inner = 0;
        for b in bits(free & !(1 << a)) {
            if let Some(q) = self.game.step(p, a, b) {
                inner = inner.max(1 + self.value(&q));
                if inner >= cap {
                    break;
                }
            }
        }
        inner
    }

    /// Root value with `A`'s first moves spread over the executor.
    pub fn root_value(&self) -> usize {
        let root = self.game.root();
        let free = self.game.free(&root);
        let left = rounds_left(free);
        if left == 0 {
            return 0;
        }
        let moves: Vec<usize> = bits(free).collect();
        let vals = par_map(self.exec, &moves, |&a| self.reply_value(&root, free, a, left));
        vals.into_iter().min().unwrap_or(0)
    }

    /// Can `B` survive `r` more rounds from `p` whatever `A` does?
    fn survives(&self, p: &G::Pos, r: usize) -> bool {
        if r == 0 {
            return true;
        }
        let free = self.game.free(p);
        if rounds_left(free) < r {
            return false;
        }
        let key = (self.game.key(p), r as u8);
        if let Some(v) = self.survive.get(&key).map(|v| *v) {
            self.hit();
            return v;
        }
        self.expand();
        let ok = bits(free).all(|a| self.answer_survives(p, free, a, r));
        self.survive.insert(key, ok);
        ok
    }

    fn answer_survives(&self, p: &G::Pos, free: u64, a: usize, r: usize) -> bool {
        bits(free & !(1 << a)).any(|b| self.game.step(p, a, b).is_some_and(|q| self.survives(&q, r - 1)))
    }

    /// Can `A` break the isomorphism within `j` rounds from `p` whatever `B` does?
    fn forces(&self, p: &G::Pos, j: usize) -> bool {
        if j == 0 {
            return false;
        }
        let free = self.game.free(p);
        if rounds_left(free) == 0 {
            return false;
        }
        let key = (self.game.key(p), j as u8);
        if let Some(v) = self.force.get(&key).map(|v| *v) {
            self.hit();
            return v;
        }
        self.expand();
        let ok = bits(free).any(|a| self.move_forces(p, free, a, j));
        self.force.insert(key, ok);
        ok
    }

    fn move_forces(&self, p: &G::Pos, free: u64, a: usize, j: usize) -> bool {
        bits(free & !(1 << a)).all(|b| match self.game.step(p, a, b) {
            None => true,
            Some(q) => self.forces(&q, j - 1),
        })
    }

    /// `max_{S_2} min_{S_1}`: the largest `r` that `B` can guarantee to survive.
    pub fn maxmin(&self) -> usize {
        let root = self.game.root();
        let free = self.game.free(&root);
        let moves: Vec<usize> = bits(free).collect();
        let mut r = 0;
        while r < rounds_left(free)
            && par_all(self.exec, &moves, |&a| self.answer_survives(&root, free, a, r + 1))
        {
            r += 1;
        }
        r
    }

    /// `min_{S_1} max_{S_2}`: the least `r` such that `A` breaks by round `r + 1`.
    pub fn minmax(&self) -> usize {
        let root = self.game.root();
        let free = self.game.free(&root);
        let left = rounds_left(free);
        let moves: Vec<usize> = bits(free).collect();
        (0..left)
            .find(|&r| par_any(self.exec, &moves, |&a| self.move_forces(&root, free, a, r + 1)))
            .unwrap_or(left)
    }

    /// `A`'s optimal move at `p`, lowest edge on ties.
    pub fn best_a(&self, p: &G::Pos) -> Option<usize> {
        let free = self.game.free(p);
        if rounds_left(free) == 0 {
            return None;
        }
        let target = self.value(p);
        bits(free).find(|&a| self.reply_value(p, free, a, usize::MAX) == target)
    }

    /// `B`'s optimal answer to `a` at `p`, lowest edge on ties. `None` if every answer loses.
    pub fn best_b(&self, p: &G::Pos, a: usize) -> Option<usize> {
        let free = self.game.free(p);
        let mut best: Option<(usize, usize)> = None;
        for b in bits(free & !(1 << a)) {
            if let Some(q) = self.game.step(p, a, b) {
                let v = 1 + self.value(&q);
                if best.is_none_or(|(bv, _)| v > bv) {
                    best = Some((v, b));
                }
            }
        }
        best.map(|(_, b)| b)
    }
}
