use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{EdgeSet, Graph};
use crate::error::{Error, Result};

/// One connected component of an edge-induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
}

impl Component {
    /// Number of edges, written `|A|`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn first_edge(&self) -> usize {
        self.edges[0]
    }

    pub fn last_edge(&self) -> usize {
        *self.edges.last().expect("empty component")
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Decomposes an edge set into connected components, ordered by smallest edge.
pub fn components(g: &Graph, set: &EdgeSet) -> Vec<Component> {
    let mut seen = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for start in set.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut edges = vec![start];
        let mut vertices = Vec::new();
        let mut queue = VecDeque::from([start]);
        while let Some(e) = queue.pop_front() {
            let (a, b) = g.edge(e);
            for v in [a, b] {
                vertices.push(v);
                for &(_, f) in g.incident(v) {
                    if set.contains(f) && !seen[f] {
                        seen[f] = true;
                        edges.push(f);
                        queue.push_back(f);
                    }
                }
            }
        }
        edges.sort_unstable();
        vertices.sort_unstable();
        vertices.dedup();
        out.push(Component { edges, vertices });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Ordinary graph distance between the nearest vertices.
    Standard,
    /// Shortest path that uses only edges outside `occupied`.
    UnchosenOnly,
}

/// Distance between two components. `Unreachable` is kept apart from any
/// finite value so comparisons between distances stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

pub fn component_distance(
    g: &Graph,
    a: &Component,
    b: &Component,
    mode: DistanceMode,
    occupied: &EdgeSet,
) -> Result<Distance> {
    if a.vertices.iter().any(|v| b.contains_vertex(*v)) {
        return Err(Error::Parameter("components share a vertex".into()));
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in &a.vertices {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if b.contains_vertex(v) {
            return Ok(Distance::Finite(dist[v]));
        }
        for &(w, e) in g.incident(v) {
            if mode == DistanceMode::UnchosenOnly && occupied.contains(e) {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(Distance::Unreachable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(g: &Graph, edges: &[usize]) -> Component {
        let set = EdgeSet::from_edges(g.edge_count(), edges.iter().copied());
        let mut cs = components(g, &set);
        assert_eq!(cs.len(), 1);
        cs.remove(0)
    }

    #[test]
    fn components_of_path_set() {
        let g = Graph::path(9).unwrap();
        let set = EdgeSet::from_edges(9, [0, 1, 4, 6, 7]);
        let cs = components(&g, &set);
        let sizes: Vec<_> = cs.iter().map(Component::size).collect();
        assert_eq!(sizes, vec![2, 1, 2]);
        assert_eq!(cs[2].vertices, vec![6, 7, 8]);
    }

    #[test]
    fn standard_distance_on_path() {
        // 1-based edges 2 and 5 of P9 are internal edges 1 and 4.
        let g = Graph::path(9).unwrap();
        let d = component_distance(&g, &comp(&g, &[1]), &comp(&g, &[4]), DistanceMode::Standard, &g.empty_edge_set());
        assert_eq!(d.unwrap(), Distance::Finite(2));
    }

    #[test]
    fn overlapping_components_rejected() {
        let g = Graph::path(9).unwrap();
        let r = component_distance(&g, &comp(&g, &[1]), &comp(&g, &[2]), DistanceMode::Standard, &g.empty_edge_set());
        assert!(r.is_err());
    }

    #[test]
    fn unchosen_distance_on_cycle_takes_long_arc() {
        let g = Graph::cycle(7).unwrap();
        let a = comp(&g, &[0]); // vertices 0,1
        let b = comp(&g, &[3]); // vertices 3,4
        let mut occupied = EdgeSet::from_edges(7, [0, 3]);
        let short = component_distance(&g, &a, &b, DistanceMode::UnchosenOnly, &occupied).unwrap();
        assert_eq!(short, Distance::Finite(2));
        occupied.insert(1);
        let long = component_distance(&g, &a, &b, DistanceMode::UnchosenOnly, &occupied).unwrap();
        // 4 -> 5 -> 6 -> 0
        assert_eq!(long, Distance::Finite(3));
        occupied.insert(5);
        let none = component_distance(&g, &a, &b, DistanceMode::UnchosenOnly, &occupied).unwrap();
        assert_eq!(none, Distance::Unreachable);
    }
}
