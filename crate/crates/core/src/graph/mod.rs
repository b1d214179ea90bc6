//! Graphs, edge sets, line graphs, automorphisms and the subgraph
//! isomorphism test that decides every round of the game.
//!
//! Edges are indexed from 0 internally. Transcripts and the CLI number them
//! from 1, which for paths matches numbering "from one end edge to the other".

mod canon;
mod components;
mod edgeset;
mod iso;
mod perm;
mod small;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{CanonicalKey, PositionCanonizer, EXACT_REDUCTION_MAX_VERTICES};
pub use components::{component_distance, components, Component, Distance, DistanceMode};
pub use edgeset::EdgeSet;
pub use iso::{subgraph_code, subgraphs_isomorphic, subgraphs_isomorphic_general, SubgraphCode};
pub use small::{brute_force_classes, brute_force_isomorphic, graphs_up_to_isomorphism, SMALL_MAX_VERTICES};
pub use perm::{
    automorphisms, family_involution, find_involutory_fixed_edge_free_automorphism,
    VertexPermutation, INVOLUTION_SEARCH_MAX_VERTICES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Other,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "complete_bipartite" | "bipartite" => Family::CompleteBipartite,
            "other" => Family::Other,
            _ => return Err(Error::Parameter(format!("unknown graph family {s:?}"))),
        })
    }
}

/// A simple undirected graph with an ordered edge list.
#[derive(Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    family: Family,
    /// Side sizes for complete bipartite graphs.
    parts: Option<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {} vertices, {:?})", self.name(), self.vertex_count, self.edges)
    }
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list. Rejects loops and duplicates.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, family: Family) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Parameter("graph needs at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Parameter(format!("edge ({u},{v}) out of vertex range")));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            if index.insert(norm(u, v), i).is_some() {
                return Err(Error::Parameter(format!("duplicate edge ({u},{v})")));
            }
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        Ok(Graph { vertex_count, edges, family, parts: None, adjacency, index })
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Parameter("path needs at least one edge".into()));
        }
        Graph::new(n + 1, (0..n).map(|i| (i, i + 1)).collect(), Family::Path)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter("cycle needs at least three edges".into()));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect(), Family::Cycle)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Parameter("complete graph needs at least one vertex".into()));
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, edges, Family::Complete)
    }

    /// `K_{m,l}`: vertices `0..m` on one side, `m..m+l` on the other.
    pub fn complete_bipartite(m: usize, l: usize) -> Result<Self> {
        if m < 1 || l < 1 {
            return Err(Error::Parameter("bipartite sides must be non-empty".into()));
        }
        let edges = (0..m).flat_map(|x| (0..l).map(move |y| (x, m + y))).collect();
        let mut g = Graph::new(m + l, edges, Family::CompleteBipartite)?;
        g.parts = Some((m, l));
        Ok(g)
    }

    /// Constructor by family name and integer parameters.
    pub fn make(family: Family, params: &[usize]) -> Result<Self> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{} expects {k} parameter(s)", family.as_str())))
            }
        };
        match family {
            Family::Path => want(1).and_then(|_| Graph::path(params[0])),
            Family::Cycle => want(1).and_then(|_| Graph::cycle(params[0])),
            Family::Complete => want(1).and_then(|_| Graph::complete(params[0])),
            Family::CompleteBipartite => {
                want(2).and_then(|_| Graph::complete_bipartite(params[0], params[1]))
            }
            Family::Other => Err(Error::Parameter("use Graph::new for arbitrary graphs".into())),
        }
    }

    /// Parses the short names used on the command line: `P5`, `C7`, `K6`, `K3,3`.
    pub fn from_short_name(spec: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse graph name {spec:?}"));
        let (head, rest) = spec.split_at(spec.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let nums: Vec<usize> = rest
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head.trim().to_ascii_uppercase().as_str(), nums.as_slice()) {
            ("P", [n]) => Graph::path(*n),
            ("C", [n]) => Graph::cycle(*n),
            ("K", [n]) => Graph::complete(*n),
            ("K", [m, l]) => Graph::complete_bipartite(*m, *l),
            _ => Err(bad()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn bipartite_parts(&self) -> Option<(usize, usize)> {
        self.parts
    }

    /// `(neighbour, edge index)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&norm(u, v)).copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    pub fn edges_share_vertex(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// Paths and cycles, where the component-length shortcut is exact.
    pub fn is_path_like(&self) -> bool {
        matches!(self.family, Family::Path | Family::Cycle)
    }

    /// Human readable name such as `P5` or `K3,3`.
    pub fn name(&self) -> String {
        match self.family {
            Family::Path => format!("P{}", self.edge_count()),
            Family::Cycle => format!("C{}", self.edge_count()),
            Family::Complete => format!("K{}", self.vertex_count),
            Family::CompleteBipartite => {
                let (m, l) = self.parts.unwrap_or((0, 0));
                format!("K{m},{l}")
            }
            Family::Other => format!("G(v={},e={})", self.vertex_count, self.edge_count()),
        }
    }

    /// True when no three vertices are pairwise adjacent.
    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(u, v)| {
            self.adjacency[u].iter().all(|&(w, _)| w == v || !self.adjacent(w, v))
        })
    }

    pub fn to_literal(&self) -> GraphLiteral {
        GraphLiteral {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            family: match self.family {
                Family::Other => None,
                f => Some(f.as_str().to_string()),
            },
        }
    }

    pub fn from_literal(lit: &GraphLiteral) -> Result<Self> {
        let family = lit.family.as_deref().map(Family::parse).transpose()?.unwrap_or(Family::Other);
        let edges: Vec<(usize, usize)> = lit.edges.iter().map(|e| (e[0], e[1])).collect();
        // Re-derive the canonical constructor so family-specific numbering holds.
        let rebuilt = match family {
            Family::Path => Graph::path(edges.len()).ok(),
            Family::Cycle => Graph::cycle(edges.len()).ok(),
            Family::Complete => Graph::complete(lit.vertices).ok(),
            Family::CompleteBipartite => {
                let m = edges.iter().map(|e| e.0.min(e.1)).max().map_or(0, |x| x + 1);
                Graph::complete_bipartite(m, lit.vertices.saturating_sub(m)).ok()
            }
            Family::Other => None,
        };
        match rebuilt {
            Some(g) if g.vertex_count == lit.vertices && g.edges == edges => Ok(g),
            Some(_) => Err(Error::Parameter(format!(
                "edge list does not follow the {} numbering convention",
                family.as_str()
            ))),
            None => Graph::new(lit.vertices, edges, Family::Other),
        }
    }

    /// The line graph. Vertex `i` of the result is edge `i` of `self`.
    pub fn line_graph(&self) -> Result<(Graph, Vec<usize>)> {
        if self.edges.is_empty() {
            return Err(Error::Parameter("line graph of an edgeless graph".into()));
        }
        let mut out = Vec::new();
        for v in 0..self.vertex_count {
            let inc = &self.adjacency[v];
            for (i, &(_, e)) in inc.iter().enumerate() {
                for &(_, f) in &inc[i + 1..] {
                    out.push(norm(e, f));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        let family = match self.family {
            Family::Cycle => Family::Cycle,
            _ => Family::Other,
        };
        let mut lg = Graph::new(self.edge_count(), out, Family::Other)?;
        // L(P_m) = P_{m-1} and L(C_m) = C_m keep the family numbering exactly.
        if self.family == Family::Path && self.edge_count() >= 2 {
            lg = Graph::path(self.edge_count() - 1)?;
        } else if family == Family::Cycle {
            lg = Graph::cycle(self.edge_count())?;
        }
        Ok((lg, (0..self.edge_count()).collect()))
    }
}

/// JSON graph literal: `{"vertices": n, "edges": [[u,v],...], "family": "path"|null}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphLiteral {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub family: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_numbering() {
        let g = Graph::path(4).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn small_cycle_is_triangle() {
        let c3 = Graph::cycle(3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert!(subgraphs_isomorphic_general(
            &Graph::complete(3).unwrap(),
            &EdgeSet::from_edges(3, 0..3),
            &EdgeSet::from_edges(3, 0..3)
        ));
        assert!(!c3.is_triangle_free());
        assert!(!k3.is_triangle_free());
    }

    #[test]
    fn bipartite_size() {
        let g = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(g.is_triangle_free());
        assert_eq!(g.name(), "K3,3");
    }

    #[test]
    fn bad_parameters() {
        assert!(Graph::path(0).is_err());
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::complete_bipartite(0, 3).is_err());
        assert!(Graph::new(3, vec![(0, 0)], Family::Other).is_err());
        assert!(Graph::new(3, vec![(0, 1), (1, 0)], Family::Other).is_err());
        assert!(Graph::make(Family::Path, &[1, 2]).is_err());
    }

    #[test]
    fn short_names() {
        assert_eq!(Graph::from_short_name("P5").unwrap(), Graph::path(5).unwrap());
        assert_eq!(Graph::from_short_name("K3,5").unwrap().edge_count(), 15);
        assert!(Graph::from_short_name("X3").is_err());
    }

    #[test]
    fn line_graph_of_star_is_triangle() {
        let star = Graph::complete_bipartite(1, 3).unwrap();
        let (lg, corr) = star.line_graph().unwrap();
        assert_eq!(lg.vertex_count(), 3);
        assert_eq!(lg.edge_count(), 3);
        assert_eq!(corr, vec![0, 1, 2]);
    }

    #[test]
    fn line_graphs_of_paths_and_cycles() {
        let (l5, _) = Graph::path(5).unwrap().line_graph().unwrap();
        assert_eq!(l5, Graph::path(4).unwrap());
        let (c5, _) = Graph::cycle(5).unwrap().line_graph().unwrap();
        assert_eq!(c5, Graph::cycle(5).unwrap());
    }

    #[test]
    fn literal_roundtrip() {
        for g in [Graph::path(3).unwrap(), Graph::complete_bipartite(2, 3).unwrap()] {
            let lit = g.to_literal();
            let json = serde_json::to_string(&lit).unwrap();
            let back: GraphLiteral = serde_json::from_str(&json).unwrap();
            assert_eq!(Graph::from_literal(&back).unwrap(), g);
        }
        let other = GraphLiteral { vertices: 3, edges: vec![[0, 2]], family: None };
        assert_eq!(Graph::from_literal(&other).unwrap().family(), Family::Other);
    }
}
