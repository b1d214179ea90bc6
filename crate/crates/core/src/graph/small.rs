//! Exhaustive tools for graphs on a handful of vertices.

use super::{EdgeSet, Family, Graph};
use crate::error::{Error, Result};

/// Largest vertex count the exhaustive helpers accept.
pub const SMALL_MAX_VERTICES: usize = 8;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |slot| {
                    let mut q = p.clone();
                    q.insert(slot, k);
                    q
                })
            })
            .collect();
    }
    out
}

fn check_small(n: usize) -> Result<()> {
    if n > SMALL_MAX_VERTICES {
        return Err(Error::Capability(format!("{n} vertices; exhaustive helpers stop at {SMALL_MAX_VERTICES}")));
    }
    Ok(())
}

/// Edge-permutation tables of `g` induced by every vertex bijection,
/// automorphisms or not, with edges outside `g` marked `None`.
struct Relabelings {
    tables: Vec<Vec<Option<usize>>>,
}

impl Relabelings {
    fn new(g: &Graph) -> Self {
        let tables = permutations(g.vertex_count())
            .into_iter()
            .map(|p| g.edges().iter().map(|&(u, v)| g.edge_between(p[u], p[v])).collect())
            .collect();
        Relabelings { tables }
    }
}

/// Isomorphism of edge-induced subgraphs by trying every bijection of `V(g)`.
///
/// Two edge sets span isomorphic subgraphs iff some bijection of the whole
/// vertex set carries one onto the other, since the untouched vertices can be
/// matched arbitrarily.
pub fn brute_force_isomorphic(g: &Graph, e1: &EdgeSet, e2: &EdgeSet) -> Result<bool> {
    check_small(g.vertex_count())?;
    if e1.len() != e2.len() {
        return Ok(false);
    }
    let n = g.vertex_count();
    let ends2: Vec<(usize, usize)> = e2.iter().map(|e| g.edge(e)).collect();
    let has2 = |u: usize, v: usize| ends2.iter().any(|&(x, y)| (x, y) == (u, v) || (x, y) == (v, u));
    Ok(permutations(n).into_iter().any(|p| e1.iter().all(|e| {
        let (u, v) = g.edge(e);
        has2(p[u], p[v])
    })))
}

/// Brute-force canonical form of every edge subset of `g` (as a mask): the
/// least image over all vertex bijections that keep the subset inside `g`.
/// Equal forms mean isomorphic edge-induced subgraphs.
pub fn brute_force_classes(g: &Graph) -> Result<Vec<u64>> {
    check_small(g.vertex_count())?;
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::Capability(format!("{m} edges; the class table stops at 20")));
    }
    let relabel = Relabelings::new(g);
    Ok((0..1u64 << m)
        .map(|mask| {
            relabel
                .tables
                .iter()
                .filter_map(|t| {
                    (0..m).filter(|&e| mask >> e & 1 == 1).try_fold(0u64, |acc, e| t[e].map(|f| acc | 1 << f))
                })
                .min()
                .expect("the identity keeps every subset")
        })
        .collect())
}

/// All graphs on exactly `n` vertices up to isomorphism, isolated vertices
/// included, ordered by edge count and then by canonical mask.
pub fn graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    check_small(n)?;
    if n > 6 {
        return Err(Error::Capability(format!("listing graphs on {n} vertices is not supported; the limit is 6")));
    }
    let full = Graph::complete(n)?;
    let classes = brute_force_classes(&full)?;
    let mut reps: Vec<u64> = classes.iter().enumerate().filter(|&(mask, &c)| mask as u64 == c).map(|(_, &c)| c).collect();
    reps.sort_by_key(|&c| (c.count_ones(), c));
    reps.into_iter()
        .map(|mask| {
            let edges = (0..full.edge_count()).filter(|&e| mask >> e & 1 == 1).map(|e| full.edge(e)).collect();
            Graph::new(n, edges, Family::Other)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts_match_the_known_sequence() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn brute_force_on_p4() {
        let g = Graph::path(4).unwrap();
        let set = |es: &[usize]| EdgeSet::from_edges(4, es.iter().copied());
        assert!(brute_force_isomorphic(&g, &set(&[0, 1]), &set(&[2, 3])).unwrap());
        assert!(!brute_force_isomorphic(&g, &set(&[0, 1]), &set(&[0, 2])).unwrap());
        let classes = brute_force_classes(&g).unwrap();
        assert_eq!(classes[0b0011], classes[0b1100]);
        assert_ne!(classes[0b0011], classes[0b0101]);
    }
}
