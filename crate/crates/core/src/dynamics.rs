//! Iterated Buffon transformation on vertex coordinates.
//!
//! Each step replaces the coordinate matrix `X` (one row per vertex) by
//! `B X`, then recentres at the degree-weighted centroid and rescales to
//! unit Frobenius norm. Convergence is judged on the normalized shape
//! after aligning consecutive iterates.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{least_squares, numerical_rank};
use crate::poly_core::Graph;

/// How consecutive iterates are aligned before measuring shape change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alignment {
    /// Best orthogonal `Q` in `X_{k+1} ≈ X_k Q`. Right for operators with
    /// a real positive subdominant eigenvalue, where iterates converge.
    Orthogonal,
    /// Best linear `L`; needed when the subdominant eigenvalues are a
    /// complex pair and the iterates keep turning inside a 2D block.
    Linear,
}

/// A linear vertex-averaging map.
pub trait BuffonMap {
    fn vertex_count(&self) -> usize;
    fn apply(&self, coords: &DMatrix<f64>) -> DMatrix<f64>;
    /// Weights of the centroid the map preserves.
    fn centroid_weights(&self) -> Vec<f64>;
    fn alignment(&self) -> Alignment;
}

impl BuffonMap for Graph {
    fn vertex_count(&self) -> usize {
        Graph::vertex_count(self)
    }

    /// `r_i <- sum_{j ~ i} (r_i + r_j) / (2 d_i)`.
    fn apply(&self, coords: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = coords * 0.5;
        for i in 0..Graph::vertex_count(self) {
            let w = 0.5 / self.degree(i) as f64;
            for &j in self.neighbors(i) {
                for c in 0..coords.ncols() {
                    out[(i, c)] += w * coords[(j, c)];
                }
            }
        }
        out
    }

    fn centroid_weights(&self) -> Vec<f64> {
        self.degrees().into_iter().map(|d| d as f64).collect()
    }

    fn alignment(&self) -> Alignment {
        Alignment::Orthogonal
    }
}

/// The midpoint map on an `n`-gon: `r_i <- (r_i + r_{i+1}) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedPolygon {
    pub n: usize,
}

impl DirectedPolygon {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("polygon needs n >= 3, got {n}")));
        }
        Ok(Self { n })
    }

    /// Dense matrix `(I + T) / 2` with `T` the cyclic shift.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| if j == i || j == (i + 1) % n { 0.5 } else { 0.0 })
    }
}

impl BuffonMap for DirectedPolygon {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn apply(&self, coords: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, coords.ncols(), |i, c| {
            0.5 * (coords[(i, c)] + coords[((i + 1) % self.n, c)])
        })
    }

    fn centroid_weights(&self) -> Vec<f64> {
        vec![1.0; self.n]
    }

    fn alignment(&self) -> Alignment {
        Alignment::Linear
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Shape change after alignment, one entry per step.
    pub shape_changes: Vec<f64>,
    pub collapse_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateState {
    pub coords: DMatrix<f64>,
    pub step: usize,
    pub diagnostics: Diagnostics,
}

impl CoordinateState {
    pub fn new(coords: DMatrix<f64>) -> Self {
        let collapse_dim = numerical_rank(&coords, RANK_TOL);
        Self {
            coords,
            step: 0,
            diagnostics: Diagnostics {
                shape_changes: Vec::new(),
                collapse_dim,
            },
        }
    }
}

/// Relative singular-value threshold for the collapse dimension.
pub const RANK_TOL: f64 = 1e-8;

/// One application of the map, without renormalization.
pub fn buffon_step<M: BuffonMap + ?Sized>(state: &CoordinateState, map: &M) -> CoordinateState {
    let coords = map.apply(&state.coords);
    let mut next = CoordinateState::new(coords);
    next.step = state.step + 1;
    next.diagnostics.shape_changes = state.diagnostics.shape_changes.clone();
    next
}

pub fn weighted_centroid(coords: &DMatrix<f64>, weights: &[f64]) -> DVector<f64> {
    let total: f64 = weights.iter().sum();
    DVector::from_fn(coords.ncols(), |c, _| {
        (0..coords.nrows()).map(|i| weights[i] * coords[(i, c)]).sum::<f64>() / total
    })
}

/// Recentres at the weighted centroid and scales to unit Frobenius norm.
/// Returns the norm before scaling.
pub fn normalize(coords: &mut DMatrix<f64>, weights: &[f64]) -> f64 {
    let c = weighted_centroid(coords, weights);
    for i in 0..coords.nrows() {
        for k in 0..coords.ncols() {
            coords[(i, k)] -= c[k];
        }
    }
    let norm = coords.norm();
    if norm > 0.0 {
        *coords /= norm;
    }
    norm
}

/// Residual `min ||next - prev A||_F` over the alignment class.
pub fn aligned_change(prev: &DMatrix<f64>, next: &DMatrix<f64>, alignment: Alignment) -> f64 {
    match alignment {
        Alignment::Orthogonal => {
            let m = prev.transpose() * next;
            let svd = m.svd(true, true);
            let q = svd.u.expect("u") * svd.v_t.expect("v_t");
            (next - prev * q).norm()
        }
        Alignment::Linear => {
            let l = least_squares(prev, next);
            (next - prev * l).norm()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterateOptions {
    pub max_steps: usize,
    pub shape_tol: f64,
    pub rank_tol: f64,
}

impl Default for IterateOptions {
    fn default() -> Self {
        Self {
            max_steps: 100_000,
            shape_tol: 1e-10,
            rank_tol: RANK_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOutcome {
    pub limit: CoordinateState,
    pub collapse_dim: usize,
    pub steps_used: usize,
}

/// Iterates step + recentre + rescale until the aligned shape change
/// drops below `shape_tol`.
pub fn iterate_to_limit<M: BuffonMap + ?Sized>(
    coords: &DMatrix<f64>,
    map: &M,
    opts: &IterateOptions,
) -> Result<IterationOutcome> {
    if !(opts.shape_tol > 0.0) {
        return Err(Error::InvalidArgument("shape tolerance must be positive".into()));
    }
    if coords.nrows() != map.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "{} coordinate rows for {} vertices",
            coords.nrows(),
            map.vertex_count()
        )));
    }
    let weights = map.centroid_weights();
    let mut current = coords.clone();
    if normalize(&mut current, &weights) == 0.0 {
        return Err(Error::InvalidArgument("initial coordinates are all equal".into()));
    }
    let mut changes = Vec::new();
    for step in 1..=opts.max_steps {
        let mut next = map.apply(&current);
        if normalize(&mut next, &weights) == 0.0 {
            return Err(Error::NoConvergence {
                steps: step,
                last_change: f64::NAN,
                detail: "coordinates collapsed to a point".into(),
            });
        }
        let change = aligned_change(&current, &next, map.alignment());
        changes.push(change);
        current = next;
        if change < opts.shape_tol {
            let collapse_dim = numerical_rank(&current, opts.rank_tol);
            return Ok(IterationOutcome {
                limit: CoordinateState {
                    coords: current,
                    step,
                    diagnostics: Diagnostics {
                        shape_changes: changes,
                        collapse_dim,
                    },
                },
                collapse_dim,
                steps_used: step,
            });
        }
    }
    let tail = &changes[changes.len().saturating_sub(4)..];
    Err(Error::NoConvergence {
        steps: opts.max_steps,
        last_change: *changes.last().unwrap_or(&f64::NAN),
        detail: format!(
            "recent shape changes {tail:?}; the leading eigenvalues below 1 may tie across groups"
        ),
    })
}

/// Adds independent uniform noise in `[-eps, eps]` to every coordinate,
/// drawn from a ChaCha8 stream seeded with `rng_seed`.
pub fn perturb(coords: &DMatrix<f64>, eps: f64, rng_seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    coords.map(|x| x + eps * rng.random_range(-1.0..=1.0))
}

/// Closed-form spectrum of the polygon midpoint map.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSpectrum {
    /// `1/2 + 1/2 e^{2πij/n}` for `j = 0..n`.
    pub eigenvalues: Vec<Complex64>,
    /// Indices `j` sorted by descending modulus (ties by ascending `j`).
    pub by_modulus: Vec<usize>,
    /// The subdominant conjugate pair `(1, n-1)`.
    pub subdominant: (usize, usize),
}

pub fn polygon_spectrum(n: usize) -> Result<PolygonSpectrum> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("polygon needs n >= 3, got {n}")));
    }
    let eigenvalues: Vec<Complex64> = (0..n)
        .map(|j| {
            let eps = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
            (Complex64::new(1.0, 0.0) + eps) * 0.5
        })
        .collect();
    // |1/2 + 1/2 e^{iθ}| = |cos(θ/2)|; sort on the exact expression.
    let modulus = |j: usize| (PI * j as f64 / n as f64).cos().abs();
    let mut by_modulus: Vec<usize> = (0..n).collect();
    by_modulus.sort_by(|&a, &b| modulus(b).total_cmp(&modulus(a)).then(a.cmp(&b)));
    Ok(PolygonSpectrum {
        eigenvalues,
        by_modulus,
        subdominant: (1, n - 1),
    })
}

/// Real basis `(cos(2πkj/n), sin(2πkj/n))_j` of the eigenspace of
/// `1/2 + 1/2 e^{±2πik/n}`.
pub fn polygram_eigenspace(n: usize, k: usize) -> Result<(DVector<f64>, DVector<f64>)> {
    if n < 3 || k == 0 || k > (n - 1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "polygram index k={k} must satisfy 1 <= k <= {} for n={n}",
            (n.max(1) - 1) / 2
        )));
    }
    let angle = |j: usize| 2.0 * PI * (k * j) as f64 / n as f64;
    Ok((
        DVector::from_fn(n, |j, _| angle(j).cos()),
        DVector::from_fn(n, |j, _| angle(j).sin()),
    ))
}

/// Largest `|r_{i-1} + r_{i+1} - 2 cos(2π/n) r_i|` over a centred polygon,
/// relative to the largest vertex norm.
pub fn affine_regular_residual(coords: &DMatrix<f64>) -> f64 {
    let n = coords.nrows();
    let c = 2.0 * (2.0 * PI / n as f64).cos();
    let centre = weighted_centroid(coords, &vec![1.0; n]);
    let row = |i: usize| coords.row(i).transpose() - &centre;
    let scale = (0..n).map(|i| row(i).norm()).fold(0.0, f64::max);
    (0..n)
        .map(|i| (row((i + n - 1) % n) + row((i + 1) % n) - row(i) * c).norm())
        .fold(0.0, f64::max)
        / scale
}
