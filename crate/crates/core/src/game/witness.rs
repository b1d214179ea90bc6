//! Round-to-round isomorphism witnesses for `Sym+`.

use crate::graph::Graph;

const UNSET: u16 = u16::MAX;

/// Every red-to-blue vertex isomorphism that extends a consistent chain
/// from round one up to now. `B` survives a round of `Sym+` while this is non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessFrontier {
    maps: Vec<Vec<u16>>,
}

impl WitnessFrontier {
    /// The frontier before the first round: the single empty map.
    pub fn initial(g: &Graph) -> Self {
        assert!(g.vertex_count() < UNSET as usize);
        WitnessFrontier { maps: vec![vec![UNSET; g.vertex_count()]] }
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    /// Extensions of the current witnesses mapping red edge `a` onto blue edge `b`.
    ///
    /// A witness maps the old red edges onto the old blue edges, so any
    /// extension must send `a` to `b`; only the two endpoint pairings are tried.
    pub fn extend(&self, g: &Graph, a: usize, b: usize) -> WitnessFrontier {
        let (x, y) = g.edge(a);
        let (u, v) = g.edge(b);
        let mut out: Vec<Vec<u16>> = Vec::new();
        for map in &self.maps {
            for (px, py) in [(u, v), (v, u)] {
                if let Some(next) = assign(map, &[(x, px), (y, py)]) {
                    out.push(next);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        WitnessFrontier { maps: out }
    }
}

fn assign(map: &[u16], pairs: &[(usize, usize)]) -> Option<Vec<u16>> {
    let mut next = map.to_vec();
    for &(from, to) in pairs {
        let to16 = to as u16;
        if next[from] == UNSET {
            if next.contains(&to16) {
                return None;
            }
            next[from] = to16;
        } else if next[from] != to16 {
            return None;
        }
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_has_two_witnesses() {
        let g = Graph::path(4).unwrap();
        let f = WitnessFrontier::initial(&g).extend(&g, 0, 3);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn commitment_matters() {
        // P5: red grows 3 then 4, blue grows 1 then 2.
        let g = Graph::path(5).unwrap();
        let f = WitnessFrontier::initial(&g).extend(&g, 2, 0).extend(&g, 3, 1);
        assert_eq!(f.len(), 1);
        // red {1,3} is a matching while blue {4,5} is a path
        let broken = WitnessFrontier::initial(&g).extend(&g, 0, 3).extend(&g, 2, 4);
        assert!(broken.is_empty());
    }
}
