use serde::{Deserialize, Serialize};

use super::{Family, Graph};
use crate::error::{Error, Result};

/// Largest vertex count for which the exhaustive involution search runs.
pub const INVOLUTION_SEARCH_MAX_VERTICES: usize = 16;

/// A bijection on vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPermutation(pub Vec<usize>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &w)| w < self.0.len() && self.0[w] == v)
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.0.len() == g.vertex_count()
            && self.is_bijection()
            && g.edges().iter().all(|&(u, v)| g.adjacent(self.0[u], self.0[v]))
    }

    /// The induced edge permutation `{u,v} -> {phi(u), phi(v)}`.
    /// Only meaningful for automorphisms.
    pub fn edge_map(&self, g: &Graph) -> Vec<usize> {
        g.edges()
            .iter()
            .map(|&(u, v)| g.edge_between(self.0[u], self.0[v]).expect("not an automorphism"))
            .collect()
    }

    pub fn is_fixed_edge_free(&self, g: &Graph) -> bool {
        self.edge_map(g).iter().enumerate().all(|(e, &f)| e != f)
    }

    /// Checks every property the mirror strategy needs.
    pub fn is_involutory_fixed_edge_free_automorphism(&self, g: &Graph) -> bool {
        self.is_automorphism(g) && self.is_involution() && self.is_fixed_edge_free(g)
    }
}

/// All automorphisms of `g` by backtracking. Refuses graphs above `max_vertices`.
pub fn automorphisms(g: &Graph, max_vertices: usize) -> Result<Vec<VertexPermutation>> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::Capability(format!(
            "automorphism enumeration limited to {max_vertices} vertices, graph has {n}"
        )));
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_automorphism(g, 0, &mut image, &mut used, &mut |img| {
        out.push(VertexPermutation(img.to_vec()));
        true
    });
    Ok(out)
}

/// Assigns images vertex by vertex; `visit` returns false to stop the search.
fn extend_automorphism(
    g: &Graph,
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = g.vertex_count();
    if v == n {
        return visit(image);
    }
    for w in 0..n {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        // Adjacency with every earlier vertex must be preserved both ways.
        let consistent = (0..v).all(|u| g.adjacent(u, v) == g.adjacent(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        let go_on = extend_automorphism(g, v + 1, image, used, visit);
        used[w] = false;
        image[v] = usize::MAX;
        if !go_on {
            return false;
        }
    }
    true
}

/// A known involution for the standard families, when one exists.
///
/// Even paths use the reflection, even cycles the antipodal rotation and
/// `K_{m,l}` with an even side swaps vertices of that side in pairs.
pub fn family_involution(g: &Graph) -> Option<VertexPermutation> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let perm = match g.family() {
        Family::Path if m.is_multiple_of(2) => VertexPermutation((0..n).map(|v| m - v).collect()),
        Family::Cycle if m.is_multiple_of(2) => VertexPermutation((0..n).map(|v| (v + m / 2) % m).collect()),
        Family::CompleteBipartite => {
            let (a, b) = g.bipartite_parts()?;
            let mut p: Vec<usize> = (0..n).collect();
            if a % 2 == 0 {
                for x in (0..a).step_by(2) {
                    p.swap(x, x + 1);
                }
            } else if b % 2 == 0 {
                for y in (a..a + b).step_by(2) {
                    p.swap(y, y + 1);
                }
            } else {
                return None;
            }
            VertexPermutation(p)
        }
        _ => return None,
    };
    perm.is_involutory_fixed_edge_free_automorphism(g).then_some(perm)
}

/// Searches for an involutory automorphism whose edge map has no fixed edge.
pub fn find_involutory_fixed_edge_free_automorphism(
    g: &Graph,
) -> Result<Option<VertexPermutation>> {
    if let Some(p) = family_involution(g) {
        return Ok(Some(p));
    }
    let n = g.vertex_count();
    if n > INVOLUTION_SEARCH_MAX_VERTICES {
        return Err(Error::Capability(format!(
            "involution search limited to {INVOLUTION_SEARCH_MAX_VERTICES} vertices, graph has {n}"
        )));
    }
    let mut image = vec![usize::MAX; n];
    let mut found = None;
    search_involution(g, 0, &mut image, &mut found);
    Ok(found.map(VertexPermutation))
}

fn search_involution(g: &Graph, v: usize, image: &mut [usize], found: &mut Option<Vec<usize>>) {
    let n = g.vertex_count();
    if found.is_some() {
        return;
    }
    if v == n {
        *found = Some(image.to_vec());
        return;
    }
    if image[v] != usize::MAX {
        search_involution(g, v + 1, image, found);
        return;
    }
    for w in v..n {
        if image[w] != usize::MAX || g.degree(w) != g.degree(v) {
            continue;
        }
        image[v] = w;
        image[w] = v;
        if involution_consistent(g, v, w, image) {
            search_involution(g, v + 1, image, found);
            if found.is_some() {
                return;
            }
        }
        image[v] = usize::MAX;
        image[w] = usize::MAX;
    }
}

/// Checks adjacency preservation and the fixed-edge condition for all
/// assigned pairs touching the freshly assigned vertices `v` and `w`.
fn involution_consistent(g: &Graph, v: usize, w: usize, image: &[usize]) -> bool {
    for x in [v, w] {
        for u in 0..g.vertex_count() {
            let iu = image[u];
            if iu == usize::MAX {
                continue;
            }
            let ix = image[x];
            if g.adjacent(u, x) != g.adjacent(iu, ix) {
                return false;
            }
            // Edge {u,x} is fixed when its image is itself.
            if u != x && g.adjacent(u, x) && ((iu == u && ix == x) || (iu == x && ix == u)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_path_reflection() {
        let g = Graph::path(4).unwrap();
        let p = find_involutory_fixed_edge_free_automorphism(&g).unwrap().unwrap();
        assert_eq!(p.0, vec![4, 3, 2, 1, 0]);
        assert_eq!(p.edge_map(&g), vec![3, 2, 1, 0]);
    }

    #[test]
    fn odd_path_has_none() {
        let g = Graph::path(5).unwrap();
        assert!(find_involutory_fixed_edge_free_automorphism(&g).unwrap().is_none());
    }

    #[test]
    fn c6_has_one() {
        let g = Graph::cycle(6).unwrap();
        let p = find_involutory_fixed_edge_free_automorphism(&g).unwrap().unwrap();
        assert!(p.is_involutory_fixed_edge_free_automorphism(&g));
    }

    #[test]
    fn search_without_family_hint() {
        // C6 presented as an arbitrary graph still has an involution.
        let c = Graph::cycle(6).unwrap();
        let g = Graph::new(6, c.edges().to_vec(), Family::Other).unwrap();
        let p = find_involutory_fixed_edge_free_automorphism(&g).unwrap().unwrap();
        assert!(p.is_involutory_fixed_edge_free_automorphism(&g));
        let t = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (0, 3)], Family::Other).unwrap();
        assert!(find_involutory_fixed_edge_free_automorphism(&t).unwrap().is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Graph::complete(4).unwrap(), 8).unwrap().len(), 24);
        assert_eq!(automorphisms(&Graph::cycle(5).unwrap(), 8).unwrap().len(), 10);
        assert_eq!(automorphisms(&Graph::path(3).unwrap(), 8).unwrap().len(), 2);
        assert_eq!(automorphisms(&Graph::complete_bipartite(2, 3).unwrap(), 8).unwrap().len(), 12);
        assert!(automorphisms(&Graph::path(20).unwrap(), 8).is_err());
    }

    #[test]
    fn too_large_for_search() {
        let g = Graph::path(21).unwrap();
        assert!(find_involutory_fixed_edge_free_automorphism(&g).is_err());
        // the family shortcut still answers for even paths
        assert!(find_involutory_fixed_edge_free_automorphism(&Graph::path(40).unwrap())
            .unwrap()
            .is_some());
    }
}
