//! Colin de Verdière matrix of a convex realization via its polar.
//!
//! For a convex polyhedron with vertices `u_i` containing the origin, each
//! face `f` has a polar vertex `w_f` with `(w_f, u_i) = 1` on the face.
//! Across the edge `i -> j` (face `f` on its left, `g` on its right)
//! `w_f - w_g` is parallel to `u_i × u_j`, which fixes the off-diagonal
//! entry; the diagonal makes `sum_j M_ij u_j = 0`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::{centroid, cross, diameter, dot, newell_normal, norm, scale, sub, Point3};
use crate::linalg::jacobi_eigen;
use crate::poly_core::PolyhedralComplex;

const PLANAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CdVMatrix {
    pub matrix: DMatrix<f64>,
    /// Columns span the (numerical) kernel.
    pub kernel_basis: DMatrix<f64>,
    pub negative_count: usize,
    pub corank: usize,
    /// Ascending eigenvalues of `matrix`.
    pub eigenvalues: Vec<f64>,
    /// `max |sum_j M_ij u_j|` relative to `max |M| * max |u|`.
    pub identity_residual: f64,
}

impl CdVMatrix {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn cdv_matrix(coords: &DMatrix<f64>, complex: &PolyhedralComplex) -> Result<CdVMatrix> {
    if coords.ncols() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: coords.ncols(),
        });
    }
    let n = complex.vertex_count();
    if coords.nrows() != n {
        return Err(Error::InvalidArgument(format!(
            "{} coordinate rows for {} vertices",
            coords.nrows(),
            n
        )));
    }
    let u: Vec<Point3> = crate::geometry::rows_as_points(coords);
    let size = diameter(&u).max(f64::MIN_POSITIVE);

    let mut polar = Vec::with_capacity(complex.face_count());
    for (fi, face) in complex.faces().iter().enumerate() {
        let poly: Vec<Point3> = face.iter().map(|&i| u[i]).collect();
        let nrm = newell_normal(&poly);
        let len = norm(nrm);
        let unit = scale(nrm, 1.0 / len);
        let offset = dot(unit, centroid(&poly));
        if !(offset > 1e-12 * size) {
            return Err(Error::OriginOutside { face: fi });
        }
        let deviation = poly
            .iter()
            .map(|&p| (dot(unit, p) - offset).abs())
            .fold(0.0, f64::max)
            / size;
        if deviation > PLANAR_TOL {
            return Err(Error::FaceNotPlanar { face: fi, deviation });
        }
        let w = scale(unit, 1.0 / offset);
        if u.iter().any(|&p| dot(w, p) > 1.0 + PLANAR_TOL) {
            return Err(Error::NotConvex { face: fi });
        }
        polar.push(w);
    }

    let faces_of = complex.directed_edge_faces();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for &(i, j) in complex.edges() {
        let f = faces_of[&(i, j)];
        let g = faces_of[&(j, i)];
        let c = cross(u[i], u[j]);
        let value = -dot(sub(polar[f], polar[g]), c) / dot(c, c);
        if !(value < 0.0) {
            return Err(Error::NotConvex { face: f });
        }
        m[(i, j)] = value;
        m[(j, i)] = value;
    }
    for i in 0..n {
        let mut acc = [0.0; 3];
        for j in 0..n {
            if m[(i, j)] != 0.0 {
                acc = crate::geometry::add(acc, scale(u[j], m[(i, j)]));
            }
        }
        m[(i, i)] = -dot(acc, u[i]) / dot(u[i], u[i]);
    }

    let mu = &m * coords;
    let identity_residual = mu.amax() / (m.amax() * coords.amax()).max(f64::MIN_POSITIVE);

    let eig = jacobi_eigen(&m);
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let zero_tol = 1e-9 * top;
    let negative_count = eig.eigenvalues.iter().filter(|&&x| x < -zero_tol).count();
    let kernel: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k].abs() <= zero_tol).collect();
    let kernel_basis = DMatrix::from_fn(n, kernel.len(), |r, c| eig.eigenvectors[(r, kernel[c])]);
    let mut eigenvalues = eig.eigenvalues.clone();
    eigenvalues.reverse();
    Ok(CdVMatrix {
        matrix: m,
        kernel_basis,
        negative_count,
        corank: kernel.len(),
        eigenvalues,
        identity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::principal_angles;
    use crate::reference::NamedSolid;

    #[test]
    fn tetrahedron_has_equal_edge_weights() {
        let s = NamedSolid::Tetrahedron.build().unwrap();
        let c = cdv_matrix(&s.coords_matrix(), &s.complex).unwrap();
        assert_eq!(c.corank, 3);
        assert_eq!(c.negative_count, 1);
        let w = c.matrix[(0, 1)];
        assert!(w < 0.0);
        for &(i, j) in s.complex.edges() {
            assert!((c.matrix[(i, j)] - w).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_kernel_contains_coordinates() {
        let s = NamedSolid::Cube.build().unwrap();
        let x = s.coords_matrix();
        let c = cdv_matrix(&x, &s.complex).unwrap();
        assert!(c.identity_residual < 1e-12);
        let angles = principal_angles(&x, &c.kernel_basis);
        assert!(angles.iter().all(|&a| a < 1e-10));
    }

    #[test]
    fn origin_outside_is_rejected() {
        let s = NamedSolid::Cube.build().unwrap();
        let shifted = s.coords_matrix().map(|v| v + 2.0);
        assert!(matches!(
            cdv_matrix(&shifted, &s.complex),
            Err(Error::OriginOutside { .. })
        ));
    }

    #[test]
    fn warped_face_is_rejected() {
        let s = NamedSolid::Cube.build().unwrap();
        let mut x = s.coords_matrix();
        x[(7, 0)] += 0.1;
        assert!(matches!(
            cdv_matrix(&x, &s.complex),
            Err(Error::FaceNotPlanar { .. })
        ));
    }

    #[test]
    fn dented_solid_is_rejected() {
        // Push one icosahedron vertex below the plane of its neighbours.
        let s = NamedSolid::Icosahedron.build().unwrap();
        let mut x = s.coords_matrix();
        for c in 0..3 {
            x[(0, c)] *= 0.3;
        }
        assert!(matches!(cdv_matrix(&x, &s.complex), Err(Error::NotConvex { .. })));
    }
}
