//! Small 3D helpers over `[f64; 3]` points.

use nalgebra::{DMatrix, Matrix3, Vector3};

pub type Point3 = [f64; 3];

pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

pub fn centroid(points: &[Point3]) -> Point3 {
    let s = points.iter().fold([0.0; 3], |acc, &p| add(acc, p));
    scale(s, 1.0 / points.len() as f64)
}

/// Determinant of the rows `a, b, c`: six times the signed volume of the
/// tetrahedron `(0, a, b, c)`.
pub fn triple(a: Point3, b: Point3, c: Point3) -> f64 {
    dot(a, cross(b, c))
}

/// Newell normal of a polygon; its length is twice the (projected) area.
pub fn newell_normal(poly: &[Point3]) -> Point3 {
    let mut n = [0.0; 3];
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        n[0] += (a[1] - b[1]) * (a[2] + b[2]);
        n[1] += (a[2] - b[2]) * (a[0] + b[0]);
        n[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    n
}

/// Signed solid angle of triangle `(a, b, c)` seen from the origin
/// (Van Oosterom and Strackee).
pub fn solid_angle(a: Point3, b: Point3, c: Point3) -> f64 {
    let (la, lb, lc) = (norm(a), norm(b), norm(c));
    let num = triple(a, b, c);
    let den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
    2.0 * num.atan2(den)
}

/// Best-fit plane through points: (unit normal, centroid, max distance).
pub fn best_fit_plane(points: &[Point3]) -> (Point3, Point3, f64) {
    let c = centroid(points);
    let mut cov = Matrix3::<f64>::zeros();
    for &p in points {
        let d = Vector3::from(sub(p, c));
        cov += d * d.transpose();
    }
    let eig = cov.symmetric_eigen();
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("3 eigenvalues");
    let n = eig.eigenvectors.column(imin);
    let normal = [n[0], n[1], n[2]];
    let dev = points
        .iter()
        .map(|&p| dot(sub(p, c), normal).abs())
        .fold(0.0, f64::max);
    (normal, c, dev)
}

pub fn diameter(points: &[Point3]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            d = d.max(norm(sub(a, b)));
        }
    }
    d
}

/// Rows of an `n x 3` matrix as points.
pub fn rows_as_points(m: &DMatrix<f64>) -> Vec<Point3> {
    (0..m.nrows()).map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]]).collect()
}

pub fn points_as_rows(points: &[Point3]) -> DMatrix<f64> {
    DMatrix::from_fn(points.len(), 3, |i, j| points[i][j])
}

/// Facets of the convex hull of a small point set, each an outward
/// counterclockwise cycle, by brute force over point triples. Facets are
/// reported in order of discovery, each rotated to start at its smallest
/// index, so the output is a deterministic function of the input order.
pub fn convex_hull_faces(points: &[Point3], tol: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let scale_len = diameter(points).max(f64::MIN_POSITIVE);
    let eps = tol * scale_len;
    let mut seen_planes: Vec<(Point3, f64)> = Vec::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = cross(sub(points[j], points[i]), sub(points[k], points[i]));
                let len = norm(nrm);
                if len <= eps * scale_len {
                    continue;
                }
                let mut unit = scale(nrm, 1.0 / len);
                let mut off = dot(unit, points[i]);
                let (mut above, mut below) = (false, false);
                for p in points {
                    let s = dot(unit, *p) - off;
                    above |= s > eps;
                    below |= s < -eps;
                }
                if above && below {
                    continue;
                }
                if above {
                    unit = scale(unit, -1.0);
                    off = -off;
                }
                if seen_planes
                    .iter()
                    .any(|(u, o)| norm(sub(*u, unit)) < 1e-9 && (o - off).abs() <= eps)
                {
                    continue;
                }
                seen_planes.push((unit, off));
                let on: Vec<usize> = (0..n)
                    .filter(|&m| (dot(unit, points[m]) - off).abs() <= eps)
                    .collect();
                faces.push(order_ccw(points, &on, unit));
            }
        }
    }
    faces
}

fn order_ccw(points: &[Point3], idx: &[usize], normal: Point3) -> Vec<usize> {
    let pts: Vec<Point3> = idx.iter().map(|&i| points[i]).collect();
    let c = centroid(&pts);
    let ref_dir = sub(pts[0], c);
    let ortho = cross(normal, ref_dir);
    let mut tagged: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = sub(points[i], c);
            (dot(d, ortho).atan2(dot(d, ref_dir)), i)
        })
        .collect();
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
    let cycle: Vec<usize> = tagged.into_iter().map(|(_, i)| i).collect();
    crate::poly_core::complex::canonical_cycle(&cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_hull_has_six_quads() {
        let mut pts = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    pts.push([x, y, z]);
                }
            }
        }
        let faces = convex_hull_faces(&pts, 1e-9);
        assert_eq!(faces.len(), 6);
        for f in &faces {
            assert_eq!(f.len(), 4);
            let poly: Vec<_> = f.iter().map(|&i| pts[i]).collect();
            // outward: normal points away from the origin
            assert!(dot(newell_normal(&poly), centroid(&poly)) > 0.0);
        }
    }

    #[test]
    fn solid_angles_of_octants_sum_to_sphere() {
        let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let w = solid_angle(e[0], e[1], e[2]);
        assert!((w - std::f64::consts::PI / 2.0).abs() < 1e-14);
        assert!((solid_angle(e[0], e[2], e[1]) + w).abs() < 1e-14);
    }

    #[test]
    fn plane_fit_of_square() {
        let sq = [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0]];
        let (n, c, dev) = best_fit_plane(&sq);
        assert!(dev < 1e-15);
        assert!((n[2].abs() - 1.0).abs() < 1e-15);
        assert_eq!(c, [0.5, 0.5, 1.0]);
    }
}
