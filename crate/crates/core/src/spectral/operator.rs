use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly_core::{Graph, PolyhedralComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Centroid of the midpoints of incident edges.
    Edge,
    /// Centroid of the centroids of incident triangles.
    Face,
}

/// Dense matrix of the Buffon operator on functions over the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct BuffonOperator {
    pub matrix: DMatrix<f64>,
    pub degrees: Vec<usize>,
    pub variant: Variant,
}

impl BuffonOperator {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// `D^{1/2} B D^{-1/2}`, symmetric for both variants.
    pub fn symmetric_conjugate(&self) -> DMatrix<f64> {
        let n = self.size();
        let sq: Vec<f64> = self.degrees.iter().map(|&d| (d as f64).sqrt()).collect();
        let s = DMatrix::from_fn(n, n, |i, j| sq[i] * self.matrix[(i, j)] / sq[j]);
        (&s + s.transpose()) * 0.5
    }
}

/// `B = (I + D^-1 A) / 2`: `B_ii = 1/2`, `B_ij = 1/(2 d_i)` for `i ~ j`.
pub fn buffon_matrix(graph: &Graph) -> BuffonOperator {
    let n = graph.vertex_count();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 0.5;
        let w = 0.5 / graph.degree(i) as f64;
        for &j in graph.neighbors(i) {
            m[(i, j)] = w;
        }
    }
    BuffonOperator {
        matrix: m,
        degrees: graph.degrees(),
        variant: Variant::Edge,
    }
}

/// Face-centroid operator `B_F = (4/3) B - (1/3) I`, valid for simplicial
/// complexes only.
pub fn face_buffon_matrix(
    operator: &BuffonOperator,
    complex: &PolyhedralComplex,
) -> Result<BuffonOperator> {
    if let Some((face, len)) = complex.non_triangle() {
        return Err(Error::NotSimplicial { face, len });
    }
    if operator.variant != Variant::Edge {
        return Err(Error::InvalidArgument("operator is already face-based".into()));
    }
    let n = operator.size();
    let m = &operator.matrix * (4.0 / 3.0) - DMatrix::<f64>::identity(n, n) * (1.0 / 3.0);
    Ok(BuffonOperator {
        matrix: m,
        degrees: operator.degrees.clone(),
        variant: Variant::Face,
    })
}
