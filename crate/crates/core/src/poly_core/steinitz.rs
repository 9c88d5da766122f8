use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use super::complex::PolyhedralComplex;
use super::graph::Graph;

/// Combinatorial preconditions for being the skeleton of a convex polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinitzReport {
    pub is_planar: bool,
    pub is_3_connected: bool,
    /// For a bare graph: the Euler bound `E <= 3V - 6` (V >= 3). For a
    /// complex: `V - E + F = 2`.
    pub euler_ok: bool,
}

impl SteinitzReport {
    pub fn is_polyhedral(&self) -> bool {
        self.is_planar && self.is_3_connected && self.euler_ok
    }
}

pub fn validate_steinitz(graph: &Graph) -> SteinitzReport {
    let v = graph.vertex_count();
    let e = graph.edge_count();
    SteinitzReport {
        is_planar: is_planar(graph),
        is_3_connected: is_3_connected(graph),
        euler_ok: v < 3 || e + 6 <= 3 * v,
    }
}

/// Steinitz report of a complex's skeleton, with the exact Euler relation.
pub fn validate_complex(complex: &PolyhedralComplex) -> SteinitzReport {
    let g = super::graph::skeleton(complex);
    SteinitzReport {
        euler_ok: complex.euler_characteristic() == 2,
        ..validate_steinitz(&g)
    }
}

/// Left-right planarity test.
pub fn is_planar(graph: &Graph) -> bool {
    let g: UnGraph<(), ()> = UnGraph::from_edges(
        graph.edges().into_iter().map(|(a, b)| (a as u32, b as u32)),
    );
    rustworkx_core::planar::is_planar(&g)
}

/// Brute force: no set of at most two vertices disconnects the graph, and
/// there are at least four vertices.
pub fn is_3_connected(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    if n < 4 || !graph.is_connected_without(&[]) {
        return false;
    }
    for a in 0..n {
        if !graph.is_connected_without(&[a]) {
            return false;
        }
        for b in a + 1..n {
            if !graph.is_connected_without(&[a, b]) {
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
    fn k4_is_polyhedral() {
        let r = validate_steinitz(&Graph::complete(4).unwrap());
        assert!(r.is_planar && r.is_3_connected && r.euler_ok);
    }

    #[test]
    fn k5_is_not_planar() {
        let r = validate_steinitz(&Graph::complete(5).unwrap());
        assert!(!r.is_planar);
        assert!(r.is_3_connected);
        assert!(!r.euler_ok);
    }

    #[test]
    fn k33_is_not_planar() {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(6, &edges).unwrap();
        let r = validate_steinitz(&g);
        assert!(!r.is_planar);
        // E = 9 <= 3V - 6 = 12: the Euler bound alone does not catch K3,3.
        assert!(r.euler_ok);
    }

    #[test]
    fn path_is_planar_not_3_connected() {
        let r = validate_steinitz(&Graph::path(5).unwrap());
        assert!(r.is_planar);
        assert!(!r.is_3_connected);
    }

    #[test]
    fn cycle_is_only_2_connected() {
        assert!(!is_3_connected(&Graph::cycle(6).unwrap()));
    }
}
