//! Eigenspace realizations and their geometric verdicts.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    best_fit_plane, centroid, diameter, dot, newell_normal, norm, rows_as_points, solid_angle,
    sub, triple, Point3,
};
use crate::linalg::{least_squares, numerical_rank};
use crate::poly_core::{PolyhedralComplex, VertexLabel};
use crate::spectral::EigenGroup;

/// Face deviation above which a face counts as non-planar.
pub const PLANARITY_TOL: f64 = 1e-6;
/// Relative tolerance on plane offsets in [`check_convex`].
pub const CONVEXITY_TOL: f64 = 1e-9;
/// Relative area below which a triangle is degenerate.
pub const DEGENERATE_AREA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealizationSource {
    EigenGroup {
        index: usize,
        eigenvalue: f64,
        multiplicity: usize,
    },
    Iteration {
        steps: usize,
        rng_seed: Option<u64>,
    },
    File {
        path: String,
    },
    Reference {
        name: String,
    },
}

/// Vertex coordinates (one row per vertex) together with the
/// combinatorics they realize.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub coords: DMatrix<f64>,
    pub source: RealizationSource,
    pub complex: PolyhedralComplex,
}

impl Realization {
    pub fn new(coords: DMatrix<f64>, source: RealizationSource, complex: PolyhedralComplex) -> Result<Self> {
        if coords.nrows() != complex.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinate rows for {} vertices",
                coords.nrows(),
                complex.vertex_count()
            )));
        }
        Ok(Self {
            coords,
            source,
            complex,
        })
    }

    pub fn dimension(&self) -> usize {
        self.coords.ncols()
    }

    pub fn points(&self) -> Result<Vec<Point3>> {
        require_3d(&self.coords)?;
        Ok(rows_as_points(&self.coords))
    }

    /// Degree-weighted centroid of the vertices.
    pub fn weighted_centroid(&self) -> Vec<f64> {
        let degrees = vertex_degrees(&self.complex);
        let total: f64 = degrees.iter().sum();
        (0..self.dimension())
            .map(|c| {
                (0..self.coords.nrows())
                    .map(|i| degrees[i] * self.coords[(i, c)])
                    .sum::<f64>()
                    / total
            })
            .collect()
    }
}

fn require_3d(coords: &DMatrix<f64>) -> Result<()> {
    if coords.ncols() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: coords.ncols(),
        });
    }
    Ok(())
}

fn vertex_degrees(complex: &PolyhedralComplex) -> Vec<f64> {
    let mut deg = vec![0.0; complex.vertex_count()];
    for &(a, b) in complex.edges() {
        deg[a] += 1.0;
        deg[b] += 1.0;
    }
    deg
}

/// Vertex `i` goes to row `i` of the group basis, giving an
/// `n x multiplicity` coordinate matrix.
pub fn realize(group: &EigenGroup, index: usize, complex: &PolyhedralComplex) -> Result<Realization> {
    if group.multiplicity == 0 || group.basis.ncols() != group.multiplicity {
        return Err(Error::InvalidArgument(format!(
            "eigen group {index} carries {} basis vectors for multiplicity {}",
            group.basis.ncols(),
            group.multiplicity
        )));
    }
    Realization::new(
        group.basis.clone(),
        RealizationSource::EigenGroup {
            index,
            eigenvalue: group.eigenvalue,
            multiplicity: group.multiplicity,
        },
        complex.clone(),
    )
}

fn centred_points(r: &Realization) -> Result<Vec<Point3>> {
    let mut pts = r.points()?;
    let c = r.weighted_centroid();
    for p in &mut pts {
        *p = sub(*p, [c[0], c[1], c[2]]);
    }
    Ok(pts)
}

/// Triangles of every face, fanned from its first vertex.
fn fan_triangles(complex: &PolyhedralComplex) -> Vec<(usize, [usize; 3])> {
    let mut out = Vec::new();
    for (f, face) in complex.faces().iter().enumerate() {
        for k in 1..face.len() - 1 {
            out.push((f, [face[0], face[k], face[k + 1]]));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarShapeVerdict {
    pub star_shaped: bool,
    /// Sign of the majority of signed volumes (+1 or -1).
    pub orientation: i8,
    /// Faces whose signed volume is zero or of the minority sign.
    pub offending_faces: Vec<usize>,
    /// Degree of the radial projection onto the sphere around the centroid.
    pub winding_number: f64,
}

/// Star-shapedness with respect to the degree-weighted centroid: every
/// tetrahedron (centroid, face) has the same strict orientation and the
/// surface winds exactly once around the centroid.
pub fn check_star_shaped(r: &Realization) -> Result<StarShapeVerdict> {
    let pts = centred_points(r)?;
    let scale = diameter(&pts).max(f64::MIN_POSITIVE);
    let vol_eps = DEGENERATE_AREA_TOL * scale.powi(3);
    let mut volumes = vec![0.0_f64; r.complex.face_count()];
    let mut mixed = vec![false; r.complex.face_count()];
    let mut omega = 0.0;
    for (f, [a, b, c]) in fan_triangles(&r.complex) {
        let (pa, pb, pc) = (pts[a], pts[b], pts[c]);
        let area2 = norm(crate::geometry::cross(sub(pb, pa), sub(pc, pa)));
        if area2 <= DEGENERATE_AREA_TOL * scale * scale {
            return Err(Error::DegenerateFace {
                face: f,
                reason: "zero-area triangle".into(),
            });
        }
        let v = triple(pa, pb, pc) / 6.0;
        if volumes[f] != 0.0 && volumes[f].signum() != v.signum() {
            mixed[f] = true;
        }
        if v.abs() <= vol_eps {
            mixed[f] = true;
        }
        volumes[f] += v;
        omega += solid_angle(pa, pb, pc);
    }
    let positive = volumes.iter().filter(|&&v| v > 0.0).count();
    let orientation: i8 = if 2 * positive >= volumes.len() { 1 } else { -1 };
    let offending_faces: Vec<usize> = (0..volumes.len())
        .filter(|&f| mixed[f] || volumes[f] * f64::from(orientation) <= vol_eps)
        .collect();
    let winding_number = omega / (4.0 * std::f64::consts::PI);
    let star_shaped = offending_faces.is_empty() && (winding_number.abs() - 1.0).abs() < 1e-6;
    Ok(StarShapeVerdict {
        star_shaped,
        orientation,
        offending_faces,
        winding_number,
    })
}

/// True iff every face is planar, the surface is star-shaped about its
/// centroid, and the plane of every face has all vertices on its inner
/// side (tolerance relative to the diameter).
pub fn check_convex(r: &Realization) -> Result<bool> {
    let pts = centred_points(r)?;
    let star = match check_star_shaped(r) {
        Ok(v) => v,
        Err(Error::DegenerateFace { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !star.star_shaped {
        return Ok(false);
    }
    let eps = CONVEXITY_TOL * diameter(&pts).max(f64::MIN_POSITIVE);
    let sign = f64::from(star.orientation);
    for face in r.complex.faces() {
        let poly: Vec<Point3> = face.iter().map(|&v| pts[v]).collect();
        let (_, _, dev) = best_fit_plane(&poly);
        if dev > eps {
            return Ok(false);
        }
        let n = newell_normal(&poly);
        let len = norm(n);
        let n = [sign * n[0] / len, sign * n[1] / len, sign * n[2] / len];
        let c = centroid(&poly);
        if pts.iter().any(|&p| dot(sub(p, c), n) > eps) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacePlanarity {
    pub max_deviation: f64,
    /// Distance from the best-fit plane over the face diameter.
    pub deviations: Vec<f64>,
    pub non_planar: Vec<bool>,
}

impl FacePlanarity {
    pub fn all_planar(&self) -> bool {
        !self.non_planar.iter().any(|&b| b)
    }

    pub fn non_planar_count(&self) -> usize {
        self.non_planar.iter().filter(|&&b| b).count()
    }
}

pub fn face_planarity(coords: &DMatrix<f64>, complex: &PolyhedralComplex) -> Result<FacePlanarity> {
    require_3d(coords)?;
    let pts = rows_as_points(coords);
    let deviations: Vec<f64> = complex
        .faces()
        .iter()
        .map(|face| {
            if face.len() == 3 {
                return 0.0;
            }
            let poly: Vec<Point3> = face.iter().map(|&v| pts[v]).collect();
            let (_, _, dev) = best_fit_plane(&poly);
            let d = diameter(&poly);
            if d > 0.0 { dev / d } else { 0.0 }
        })
        .collect();
    Ok(FacePlanarity {
        max_deviation: deviations.iter().copied().fold(0.0, f64::max),
        non_planar: deviations.iter().map(|&d| d > PLANARITY_TOL).collect(),
        deviations,
    })
}

/// Best affine fit `s_{corr[i]} ≈ A r_i + b`, with the Frobenius residual
/// divided by the spread of the reference about its centroid.
///
/// `coords` may have any dimension; the reference sets the target
/// dimension.
pub fn affine_match(coords: &DMatrix<f64>, reference: &DMatrix<f64>, correspondence: &[usize]) -> Result<f64> {
    let n = coords.nrows();
    if reference.nrows() != n || correspondence.len() != n {
        return Err(Error::InvalidArgument(format!(
            "affine match needs equal vertex counts: {n}, {}, correspondence {}",
            reference.nrows(),
            correspondence.len()
        )));
    }
    crate::poly_core::complex::check_permutation(correspondence, n)?;
    let d = coords.ncols();
    let design = DMatrix::from_fn(n, d + 1, |i, j| if j < d { coords[(i, j)] } else { 1.0 });
    let rank = numerical_rank(&design, 1e-10);
    if rank < d + 1 {
        return Err(Error::SingularFit { rank, dim: d + 1 });
    }
    let target = DMatrix::from_fn(n, reference.ncols(), |i, j| reference[(correspondence[i], j)]);
    let fit = least_squares(&design, &target);
    let resid = (&design * fit - &target).norm();
    let mean = target.row_mean();
    let spread = DMatrix::from_fn(n, target.ncols(), |i, j| target[(i, j)] - mean[j]).norm();
    Ok(if spread > 0.0 { resid / spread } else { resid })
}

/// For each `k` on a polygonal face `v_0..v_{m-1}`, the scalar `t` with
/// `v_{k+3} - v_k ≈ t (v_{k+2} - v_{k+1})`, and the relative residual of
/// that fit. For an affine-regular octagon `t = 1 + √2` with zero residual.
pub fn diagonal_edge_ratios(coords: &DMatrix<f64>, face: &[usize]) -> Vec<(f64, f64)> {
    let m = face.len();
    let row = |v: usize| coords.row(v).transpose();
    (0..m)
        .map(|k| {
            let diag = row(face[(k + 3) % m]) - row(face[k]);
            let edge = row(face[(k + 2) % m]) - row(face[(k + 1) % m]);
            let t = diag.dot(&edge) / edge.dot(&edge);
            ((t), (&diag - &edge * t).norm() / diag.norm())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidRatios {
    /// `(apex vertex, height / distance from centroid)`.
    pub ratios: Vec<(usize, f64)>,
    pub mean: f64,
    /// Largest minus smallest ratio.
    pub spread: f64,
}

/// Height of each kis apex above the best-fit plane of its base face,
/// divided by the apex distance from the degree-weighted centroid.
pub fn pyramid_height_ratio(r: &Realization) -> Result<PyramidRatios> {
    let pts = centred_points(r)?;
    let labels = r.complex.labels().ok_or_else(|| {
        Error::InvalidArgument("complex carries no kis provenance labels".into())
    })?;
    let ratios: Vec<(usize, f64)> = labels
        .iter()
        .enumerate()
        .filter_map(|(v, label)| match label {
            VertexLabel::KisApex { base, .. } => Some((v, base)),
            _ => None,
        })
        .map(|(v, base)| {
            let poly: Vec<Point3> = base.iter().map(|&b| pts[b]).collect();
            let (normal, c, _) = best_fit_plane(&poly);
            let height = dot(sub(pts[v], c), normal).abs();
            let dist = norm(pts[v]);
            (v, if dist > 0.0 { height / dist } else { 0.0 })
        })
        .collect();
    if ratios.is_empty() {
        return Err(Error::InvalidArgument("complex has no kis apex vertices".into()));
    }
    let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let mean = ratios.iter().map(|r| r.1).sum::<f64>() / ratios.len() as f64;
    Ok(PyramidRatios {
        ratios,
        mean,
        spread: hi - lo,
    })
}

/// Geometric verdicts on a realization. The boolean verdicts are `None`
/// when the realization is not three-dimensional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub dimension: usize,
    pub star_shaped: Option<bool>,
    pub convex: Option<bool>,
    pub faces_planar: Option<bool>,
    pub max_face_deviation: Option<f64>,
    pub affine_match_residual: Option<f64>,
    pub collapse_dim: usize,
    pub notes: Vec<String>,
}

/// Runs every verdict; `reference` is an optional `(coords, correspondence)`
/// target for [`affine_match`].
pub fn shape_report(r: &Realization, reference: Option<(&DMatrix<f64>, &[usize])>) -> Result<ShapeReport> {
    let mut notes = Vec::new();
    let collapse_dim = numerical_rank(&r.coords, crate::dynamics::RANK_TOL);
    let affine_match_residual = match reference {
        Some((s, corr)) => match affine_match(&r.coords, s, corr) {
            Ok(x) => Some(x),
            Err(Error::SingularFit { rank, dim }) => {
                notes.push(format!("affine fit is singular: rank {rank} < {dim}"));
                None
            }
            Err(e) => return Err(e),
        },
        None => None,
    };
    if r.dimension() != 3 {
        notes.push(format!("{}-dimensional realization: no geometric verdicts", r.dimension()));
        return Ok(ShapeReport {
            dimension: r.dimension(),
            star_shaped: None,
            convex: None,
            faces_planar: None,
            max_face_deviation: None,
            affine_match_residual,
            collapse_dim,
            notes,
        });
    }
    let star_shaped = match check_star_shaped(r) {
        Ok(v) => {
            if !v.offending_faces.is_empty() {
                notes.push(format!("{} faces seen from the wrong side", v.offending_faces.len()));
            }
            v.star_shaped
        }
        Err(Error::DegenerateFace { face, .. }) => {
            notes.push(format!("face {face} is degenerate"));
            false
        }
        Err(e) => return Err(e),
    };
    let convex = check_convex(r)?;
    let planarity = face_planarity(&r.coords, &r.complex)?;
    if !planarity.all_planar() {
        notes.push(format!("{} faces are not planar", planarity.non_planar_count()));
    }
    Ok(ShapeReport {
        dimension: 3,
        star_shaped: Some(star_shaped),
        convex: Some(convex),
        faces_planar: Some(planarity.all_planar()),
        max_face_deviation: Some(planarity.max_deviation),
        affine_match_residual,
        collapse_dim,
        notes,
    })
}
