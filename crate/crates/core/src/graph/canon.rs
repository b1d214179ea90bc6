use super::{automorphisms, EdgeSet, Graph};

/// Exact automorphism reduction is used up to this many vertices.
pub const EXACT_REDUCTION_MAX_VERTICES: usize = 8;

/// Opaque memo key for a coloured position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub u64, pub u64);

/// Maps `(red, blue)` masks to the least image under the graph's automorphisms.
///
/// Each automorphism's edge map is stored as per-byte lookup tables so an
/// image costs one table read per byte of the mask.
#[derive(Clone)]
pub struct PositionCanonizer {
    edge_count: usize,
    tables: Vec<Vec<[u64; 256]>>,
}

impl PositionCanonizer {
    /// `reduce = false` gives the identity-only key.
    pub fn new(g: &Graph, reduce: bool) -> Self {
        assert!(g.edge_count() <= 64);
        let maps: Vec<Vec<usize>> = if reduce && g.vertex_count() <= EXACT_REDUCTION_MAX_VERTICES {
            automorphisms(g, EXACT_REDUCTION_MAX_VERTICES)
                .expect("within limit")
                .iter()
                .map(|p| p.edge_map(g))
                .filter(|m| m.iter().enumerate().any(|(i, &j)| i != j))
                .collect()
        } else {
            Vec::new()
        };
        let bytes = g.edge_count().div_ceil(8);
        let tables = maps
            .iter()
            .map(|map| {
                (0..bytes)
                    .map(|b| {
                        let mut t = [0u64; 256];
                        for (v, slot) in t.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let e = b * 8 + bit;
                                if v & (1 << bit) != 0 && e < map.len() {
                                    *slot |= 1 << map[e];
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        PositionCanonizer { edge_count: g.edge_count(), tables }
    }

    /// Number of non-identity automorphisms in use.
    pub fn reduction_size(&self) -> usize {
        self.tables.len()
    }

    pub fn key(&self, red: u64, blue: u64) -> CanonicalKey {
        let mut best = (red, blue);
        for t in &self.tables {
            let img = (apply(t, red), apply(t, blue));
            if img < best {
                best = img;
            }
        }
        CanonicalKey(best.0, best.1)
    }

    pub fn key_of_sets(&self, red: &EdgeSet, blue: &EdgeSet) -> CanonicalKey {
        debug_assert_eq!(red.capacity(), self.edge_count);
        self.key(red.mask(), blue.mask())
    }
}

#[inline]
fn apply(table: &[[u64; 256]], mask: u64) -> u64 {
    let mut out = 0;
    for (b, t) in table.iter().enumerate() {
        out |= t[((mask >> (8 * b)) & 0xff) as usize];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_inputs_equal_keys() {
        let g = Graph::path(5).unwrap();
        let c = PositionCanonizer::new(&g, true);
        assert_eq!(c.key(0b101, 0b10), c.key(0b101, 0b10));
    }

    #[test]
    fn k4_disjoint_pairs_merge() {
        // K4 edges: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3).
        // 1-based red={1},blue={2} is two adjacent edges; so is red={3},blue={5}.
        let g = Graph::complete(4).unwrap();
        let c = PositionCanonizer::new(&g, true);
        assert_eq!(c.key(1 << 0, 1 << 1), c.key(1 << 2, 1 << 4));
        // adjacent versus opposite edges must stay apart
        assert_ne!(c.key(1 << 0, 1 << 1), c.key(1 << 0, 1 << 5));
    }

    #[test]
    fn identity_only_above_limit() {
        let g = Graph::path(9).unwrap();
        let c = PositionCanonizer::new(&g, true);
        assert_eq!(c.reduction_size(), 0);
        assert_ne!(c.key(1, 0), c.key(1 << 8, 0));
    }
}
