use std::fmt;

/// A subset of the edge indices of a fixed graph.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    words: Vec<u64>,
    capacity: usize,
}

impl EdgeSet {
    pub fn new(capacity: usize) -> Self {
        EdgeSet { words: vec![0; capacity.div_ceil(64)], capacity }
    }

    pub fn from_edges(capacity: usize, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(capacity);
        for e in edges {
            s.insert(e);
        }
        s
    }

    /// Builds a set from the low `capacity` bits of `mask`.
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        assert!(capacity <= 64);
        let mut s = Self::new(capacity);
        if capacity > 0 {
            s.words[0] = mask;
        }
        s
    }

    /// The set as a bit mask. Only valid for graphs with at most 64 edges.
    pub fn mask(&self) -> u64 {
        assert!(self.capacity <= 64, "mask() on an edge set wider than 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, e: usize) -> bool {
        assert!(e < self.capacity, "edge {e} outside 0..{}", self.capacity);
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: usize) -> bool {
        if e >= self.capacity {
            return false;
        }
        let (w, b) = (e / 64, e % 64);
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.capacity && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iter() {
        let mut s = EdgeSet::new(130);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(s.remove(64));
        assert!(!s.contains(64));
        assert!(!s.contains(500));
    }

    #[test]
    fn disjointness() {
        let a = EdgeSet::from_edges(10, [1, 2]);
        let b = EdgeSet::from_edges(10, [3]);
        assert!(a.is_disjoint(&b));
        assert_eq!(a.union(&b).len(), 3);
        assert!(!a.is_disjoint(&a));
    }
}
