use crate::error::{Error, Result};
use crate::game::{GameView, Strategy};
use crate::graph::{Graph, VertexPermutation};

/// `B` answers every edge `e` with its image under an involutory
/// automorphism that fixes no edge.
pub struct Mirror {
    image: Vec<usize>,
}

impl Mirror {
    pub fn new(g: &Graph, phi: &VertexPermutation) -> Result<Self> {
        if phi.0.len() != g.vertex_count() || !phi.is_bijection() {
            return Err(Error::Parameter("mirror map is not a vertex permutation".into()));
        }
        if !phi.is_involution() {
            return Err(Error::Parameter("mirror map is not an involution".into()));
        }
        if !phi.is_automorphism(g) {
            return Err(Error::Parameter("mirror map is not an automorphism".into()));
        }
        if !phi.is_fixed_edge_free(g) {
            return Err(Error::Parameter("mirror map fixes an edge".into()));
        }
        Ok(Mirror { image: phi.edge_map(g) })
    }

    /// Uses the graph's own involution, if it has one.
    pub fn for_graph(g: &Graph) -> Result<Self> {
        let phi = crate::graph::find_involutory_fixed_edge_free_automorphism(g)?
            .ok_or_else(|| Error::Parameter(format!("{} has no involutory fixed-edge-free automorphism", g.name())))?;
        Mirror::new(g, &phi)
    }

    pub fn image(&self, e: usize) -> usize {
        self.image[e]
    }
}

impl Strategy for Mirror {
    fn name(&self) -> String {
        "mirror".into()
    }

    fn choose(&mut self, view: &GameView<'_>) -> Result<usize> {
        let a = view.last_move().ok_or_else(|| Error::Parameter("mirror plays second".into()))?;
        let b = self.image[a];
        if view.is_free(b) {
            return Ok(b);
        }
        // only reachable if the history did not come from mirrored play
        view.free_edges().next().ok_or_else(|| Error::Parameter("no free edge".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_first_edge_maps_to_last() {
        let g = Graph::path(4).unwrap();
        let m = Mirror::for_graph(&g).unwrap();
        assert_eq!(m.image(0), 3);
    }

    #[test]
    fn rejects_bad_maps() {
        let g = Graph::path(5).unwrap();
        let reflect = VertexPermutation((0..6).map(|v| 5 - v).collect());
        assert!(Mirror::new(&g, &reflect).is_err());
        assert!(Mirror::for_graph(&g).is_err());
        let g4 = Graph::path(4).unwrap();
        assert!(Mirror::new(&g4, &VertexPermutation::identity(5)).is_err());
    }
}
