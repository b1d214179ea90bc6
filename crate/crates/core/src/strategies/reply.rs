//! Which `B` replies keep the coloured subgraphs isomorphic.

use std::collections::BTreeMap;

use crate::graph::{components, subgraphs_isomorphic, EdgeSet, Family, Graph};

/// Edges `b` such that `red` and `blue + b` are isomorphic.
///
/// Paths and cycles use a component-length delta computed once per position,
/// so the whole scan is linear in the number of edges.
pub fn valid_replies(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Vec<usize> {
    if red.len() != blue.len() + 1 {
        return Vec::new();
    }
    if g.is_path_like() {
        path_like_replies(g, red, blue)
    } else {
        let mut trial = blue.clone();
        (0..g.edge_count())
            .filter(|&b| !red.contains(b) && !blue.contains(b))
            .filter(|&b| {
                trial.insert(b);
                let ok = subgraphs_isomorphic(g, red, &trial);
                trial.remove(b);
                ok
            })
            .collect()
    }
}

/// True if `b` is a free edge that keeps the position isomorphic.
pub fn is_valid_reply(g: &Graph, red: &EdgeSet, blue: &EdgeSet, b: usize) -> bool {
    if b >= g.edge_count() || red.contains(b) || blue.contains(b) {
        return false;
    }
    let mut trial = blue.clone();
    trial.insert(b);
    subgraphs_isomorphic(g, red, &trial)
}

type Delta = BTreeMap<usize, i64>;

fn add(d: &mut Delta, size: usize, by: i64) {
    let c = d.entry(size).or_insert(0);
    *c += by;
    if *c == 0 {
        d.remove(&size);
    }
}

fn path_like_replies(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Vec<usize> {
    let m = g.edge_count();
    let cyclic = g.family() == Family::Cycle;
    let full = |set: &EdgeSet| cyclic && set.len() == m;
    if full(red) {
        return Vec::new();
    }
    let mut need = Delta::new();
    for c in components(g, red) {
        add(&mut need, c.size(), 1);
    }
    let mut owner = vec![usize::MAX; m];
    let mut sizes = Vec::new();
    for (i, c) in components(g, blue).into_iter().enumerate() {
        for &e in &c.edges {
            owner[e] = i;
        }
        add(&mut need, c.size(), -1);
        sizes.push(c.size());
    }
    let neighbour = |e: usize, step_left: bool| -> Option<usize> {
        if step_left {
            if e > 0 {
                Some(e - 1)
            } else if cyclic {
                Some(m - 1)
            } else {
                None
            }
        } else if e + 1 < m {
            Some(e + 1)
        } else if cyclic {
            Some(0)
        } else {
            None
        }
    };
    let mut out = Vec::new();
    for b in 0..m {
        if red.contains(b) || blue.contains(b) {
            continue;
        }
        let left = neighbour(b, true).map(|e| owner[e]).filter(|&o| o != usize::MAX);
        let right = neighbour(b, false).map(|e| owner[e]).filter(|&o| o != usize::MAX);
        let mut delta = Delta::new();
        match (left, right) {
            (None, None) => add(&mut delta, 1, 1),
            (Some(x), None) | (None, Some(x)) => {
                add(&mut delta, sizes[x], -1);
                add(&mut delta, sizes[x] + 1, 1);
            }
            (Some(x), Some(y)) if x != y => {
                add(&mut delta, sizes[x], -1);
                add(&mut delta, sizes[y], -1);
                add(&mut delta, sizes[x] + sizes[y] + 1, 1);
            }
            // closes a blue cycle, which red cannot match
            (Some(_), Some(_)) => continue,
        }
        if delta == need {
            out.push(b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn slow(g: &Graph, red: &EdgeSet, blue: &EdgeSet) -> Vec<usize> {
        (0..g.edge_count()).filter(|&b| is_valid_reply(g, red, blue, b)).collect()
    }

    #[test]
    fn fast_scan_matches_isomorphism_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [Graph::path(13).unwrap(), Graph::cycle(12).unwrap(), Graph::cycle(9).unwrap()] {
            for _ in 0..400 {
                let m = g.edge_count();
                let k = rng.gen_range(0..m / 2);
                let mut red = g.empty_edge_set();
                let mut blue = g.empty_edge_set();
                let mut free: Vec<usize> = (0..m).collect();
                for i in 0..2 * k + 1 {
                    let e = free.swap_remove(rng.gen_range(0..free.len()));
                    if i % 2 == 0 {
                        red.insert(e);
                    } else {
                        blue.insert(e);
                    }
                }
                assert_eq!(valid_replies(&g, &red, &blue), slow(&g, &red, &blue));
            }
        }
    }
}
