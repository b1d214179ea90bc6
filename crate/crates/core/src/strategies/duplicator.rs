//! Distance-threshold duplicator for EF games on two paths or two cycles.
//!
//! Picked vertices are kept in the same order on both sides. Each gap
//! between consecutive pebbles is safe for `k` more rounds when its two
//! lengths are equal or both reach a threshold: `2^(k+1)` between two picked
//! vertices, `2^(k+1) - 2` next to an unpicked path end and `2^(k+1) - 4`
//! for a whole unpicked path. Each answer maximises the smaller safety level
//! of the two gaps it creates. When no order-preserving answer is safe the
//! duplicator takes any answer that keeps the partial isomorphism.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{is_partial_isomorphism, Duplicator, EfView, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    Inner,
    Boundary,
    Whole,
}

/// One gap of the current pairing and the rounds it is still safe for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub kind: GapKind,
    pub len0: usize,
    pub len1: usize,
    /// `None` when the lengths are equal and the gap is safe forever.
    pub level: Option<i64>,
}

/// Pairing plus per-gap safety levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicatorTable {
    pub pairs: Vec<(usize, usize)>,
    /// `None` once the pairing no longer preserves order.
    pub gaps: Option<Vec<Gap>>,
}

impl DuplicatorTable {
    /// Rounds the order-preserving scheme still guarantees.
    pub fn guaranteed(&self) -> Option<i64> {
        let gaps = self.gaps.as_ref()?;
        Some(gaps.iter().filter_map(|g| g.level).min().unwrap_or(i64::MAX))
    }
}

fn log2_floor(x: usize) -> i64 {
    if x == 0 {
        -1
    } else {
        (usize::BITS - 1 - x.leading_zeros()) as i64
    }
}

fn level(kind: GapKind, a: usize, b: usize) -> Option<i64> {
    if a == b {
        return None;
    }
    let m = a.min(b);
    Some(match kind {
        GapKind::Inner => {
            if m >= 2 {
                log2_floor(m) - 1
            } else {
                -1
            }
        }
        GapKind::Boundary => log2_floor(m + 2) - 1,
        GapKind::Whole => log2_floor(m + 4) - 1,
    })
}

fn kind_of(left_real: bool, right_real: bool) -> GapKind {
    match (left_real, right_real) {
        (true, true) => GapKind::Inner,
        (false, false) => GapKind::Whole,
        _ => GapKind::Boundary,
    }
}

/// Ordered points on both sides: `(pos0, pos1, real)`.
type Points = Vec<(usize, usize, bool)>;

#[derive(Clone, Debug)]
pub struct ThresholdDuplicator {
    /// Vertex counts of the two graphs.
    n0: usize,
    n1: usize,
    cyclic: bool,
}

impl ThresholdDuplicator {
    /// Duplicator for `P_len0` against `P_len1` (lengths in edges).
    pub fn for_paths(len0: usize, len1: usize) -> Self {
        ThresholdDuplicator { n0: len0 + 1, n1: len1 + 1, cyclic: false }
    }

    /// Duplicator for `C_len0` against `C_len1`.
    pub fn for_cycles(len0: usize, len1: usize) -> Self {
        ThresholdDuplicator { n0: len0, n1: len1, cyclic: true }
    }

    fn size(&self, side: Side) -> usize {
        match side {
            Side::Zero => self.n0,
            Side::One => self.n1,
        }
    }

    /// Rounds guaranteed from the empty position.
    pub fn guaranteed_rounds(&self) -> usize {
        if self.n0 == self.n1 {
            return usize::MAX;
        }
        if self.cyclic {
            let l = level(GapKind::Inner, self.n0, self.n1).unwrap_or(i64::MAX);
            (1 + l).max(1) as usize
        } else {
            level(GapKind::Whole, self.n0 - 1, self.n1 - 1).unwrap_or(i64::MAX).max(0) as usize
        }
    }

    /// Points in order, or `None` when the pairing is not order preserving.
    fn points(&self, pairs: &[(usize, usize)]) -> Option<Points> {
        let mut real: Vec<(usize, usize)> = pairs.to_vec();
        real.sort_unstable();
        real.dedup();
        if self.cyclic {
            if real.len() >= 2 {
                let k = real.len();
                let descents = (0..k).filter(|&i| real[(i + 1) % k].1 < real[i].1).count();
                if descents != 1 {
                    return None;
                }
            }
            return Some(real.into_iter().map(|(a, b)| (a, b, true)).collect());
        }
        if real.windows(2).any(|w| w[1].1 <= w[0].1) {
            return None;
        }
        let mut pts = vec![(0, 0, false)];
        pts.extend(real.into_iter().map(|(a, b)| (a, b, true)));
        pts.push((self.n0 - 1, self.n1 - 1, false));
        Some(pts)
    }

    /// The current pairing with its gap levels.
    pub fn table(&self, pairs: &[(usize, usize)]) -> DuplicatorTable {
        let gaps = self.points(pairs).map(|pts| self.gaps(&pts));
        DuplicatorTable { pairs: pairs.to_vec(), gaps }
    }

    fn gaps(&self, pts: &Points) -> Vec<Gap> {
        let mut out = Vec::new();
        if self.cyclic {
            let k = pts.len();
            for i in 0..k {
                let (a, b) = (pts[i], pts[(i + 1) % k]);
                let len0 = if k == 1 { self.n0 } else { (b.0 + self.n0 - a.0) % self.n0 };
                let len1 = if k == 1 { self.n1 } else { (b.1 + self.n1 - a.1) % self.n1 };
                out.push(Gap { kind: GapKind::Inner, len0, len1, level: level(GapKind::Inner, len0, len1) });
            }
        } else {
            for w in pts.windows(2) {
                let kind = kind_of(w[0].2, w[1].2);
                let (len0, len1) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                out.push(Gap { kind, len0, len1, level: level(kind, len0, len1) });
            }
        }
        out
    }

    /// Best order-preserving answer and its score, if `v` falls in a gap.
    fn ordered_answer(&self, pts: &Points, side: Side, v: usize) -> Option<(i64, usize)> {
        let other = side.other();
        let pos = |p: &(usize, usize, bool), s: Side| if s == Side::Zero { p.0 } else { p.1 };
        let score = |kind_l: GapKind, kind_r: GapKind, p: usize, q: usize, p2: usize, q2: usize| {
            let l = level(kind_l, p, p2).unwrap_or(i64::MAX);
            let r = level(kind_r, q, q2).unwrap_or(i64::MAX);
            l.min(r)
        };
        let mut best: Option<(i64, bool, usize, usize)> = None;
        let mut consider = |s: i64, exact: bool, dist: usize, y: usize| {
            let key = (s, exact, usize::MAX - dist, usize::MAX - y);
            if best.is_none_or(|b| key > (b.0, b.1, usize::MAX - b.2, usize::MAX - b.3)) {
                best = Some((s, exact, dist, y));
            }
        };
        if self.cyclic {
            let k = pts.len();
            if k == 0 {
                return Some((i64::MAX, v.min(self.size(other) - 1)));
            }
            let (ns, no) = (self.size(side), self.size(other));
            for i in 0..k {
                let (a, b) = (pts[i], pts[(i + 1) % k]);
                let ds = if k == 1 { ns } else { (pos(&b, side) + ns - pos(&a, side)) % ns };
                let p = (v + ns - pos(&a, side)) % ns;
                if p == 0 || p >= ds {
                    continue;
                }
                let dq = if k == 1 { no } else { (pos(&b, other) + no - pos(&a, other)) % no };
                for p2 in 1..dq {
                    let y = (pos(&a, other) + p2) % no;
                    let s = score(GapKind::Inner, GapKind::Inner, p, ds - p, p2, dq - p2);
                    consider(s, p2 == p || dq - p2 == ds - p, p.abs_diff(p2), y);
                }
            }
        } else {
            for w in pts.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (lo, hi) = (pos(&a, side), pos(&b, side));
                let inside = (lo < v && v < hi) || (!a.2 && v == lo) || (!b.2 && v == hi);
                if !inside {
                    continue;
                }
                let (p, q) = (v - lo, hi - v);
                let (olo, ohi) = (pos(&a, other), pos(&b, other));
                let first = if a.2 { olo + 1 } else { olo };
                let last = if b.2 { ohi.saturating_sub(1) } else { ohi };
                for y in first..=last.min(self.size(other) - 1) {
                    if y < olo || y > ohi {
                        continue;
                    }
                    let (p2, q2) = (y - olo, ohi - y);
                    let s = score(kind_of(a.2, true), kind_of(true, b.2), p, q, p2, q2);
                    consider(s, p2 == p || q2 == q, p.abs_diff(p2), y);
                }
                break;
            }
        }
        best.map(|b| (b.0, b.3))
    }
}

impl Duplicator for ThresholdDuplicator {
    fn name(&self) -> String {
        if self.cyclic {
            "duplicator-cycle".into()
        } else {
            "duplicator-path".into()
        }
    }

    fn respond(&mut self, view: &EfView<'_>, side: Side, v: usize) -> Result<usize> {
        if let Some(w) = view.partner(side, v) {
            return Ok(w);
        }
        let ordered = self.points(view.pairs).and_then(|pts| self.ordered_answer(&pts, side, v));
        if let Some((score, y)) = ordered {
            if score >= 0 {
                return Ok(y);
            }
        }
        // any answer that keeps the partial isomorphism
        let mut trial = view.pairs.to_vec();
        let fits = |y: usize, trial: &mut Vec<(usize, usize)>| {
            trial.push(if side == Side::Zero { (v, y) } else { (y, v) });
            let ok = is_partial_isomorphism(view.g0, view.g1, trial);
            trial.pop();
            ok
        };
        if let Some((_, y)) = ordered {
            if fits(y, &mut trial) {
                return Ok(y);
            }
        }
        let other = view.graph(side.other()).vertex_count();
        Ok((0..other).find(|&y| fits(y, &mut trial)).or(ordered.map(|o| o.1)).unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play_ef, Spoiler};
    use crate::graph::Graph;
    use crate::solver::{EfSolver, OptimalEf, SolverConfig};
    use std::sync::Arc;

    #[test]
    fn levels() {
        assert_eq!(level(GapKind::Inner, 4, 5), Some(1));
        assert_eq!(level(GapKind::Inner, 1, 2), Some(-1));
        assert_eq!(level(GapKind::Boundary, 0, 3), Some(0));
        assert_eq!(level(GapKind::Boundary, 2, 3), Some(1));
        assert_eq!(level(GapKind::Whole, 8, 9), Some(2));
        assert_eq!(level(GapKind::Inner, 3, 3), None);
    }

    #[test]
    fn guarantees() {
        assert_eq!(ThresholdDuplicator::for_paths(8, 9).guaranteed_rounds(), 2);
        assert_eq!(ThresholdDuplicator::for_cycles(4, 5).guaranteed_rounds(), 2);
        assert_eq!(ThresholdDuplicator::for_cycles(8, 9).guaranteed_rounds(), 3);
    }

    #[test]
    fn holds_guarantee_against_optimal_spoiler() {
        for n in 2..=8 {
            for cyclic in [false, true] {
                if cyclic && n < 3 {
                    continue;
                }
                let (g0, g1, mut d) = if cyclic {
                    (Graph::cycle(n).unwrap(), Graph::cycle(n + 1).unwrap(), ThresholdDuplicator::for_cycles(n, n + 1))
                } else {
                    (Graph::path(n).unwrap(), Graph::path(n + 1).unwrap(), ThresholdDuplicator::for_paths(n, n + 1))
                };
                let solver = Arc::new(EfSolver::new(&g0, &g1, &SolverConfig::default()).unwrap());
                let mut s = OptimalEf::new(solver);
                let (out, _) = play_ef(&g0, &g1, &mut s as &mut dyn Spoiler, &mut d, None).unwrap();
                assert!(out.survived_rounds >= d.guaranteed_rounds(), "n={n} cyclic={cyclic} {out:?}");
            }
        }
    }

    #[test]
    fn repeats_are_answered_with_partner() {
        let g0 = Graph::path(8).unwrap();
        let g1 = Graph::path(9).unwrap();
        let mut d = ThresholdDuplicator::for_paths(8, 9);
        let pairs = [(3, 3)];
        let view = EfView { g0: &g0, g1: &g1, pairs: &pairs, round_limit: 19 };
        assert_eq!(d.respond(&view, Side::One, 3).unwrap(), 3);
        assert_eq!(d.respond(&view, Side::Zero, 3).unwrap(), 3);
    }
}
