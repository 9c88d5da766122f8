//! Buffon transformation of polygons and simplicial polyhedra.
//!
//! Replacing every vertex of a polyhedron by the centroid of the midpoints
//! of its incident edges is a linear, row-stochastic map on the vertex
//! coordinates. Its iterates converge (after recentring and rescaling) to
//! a shape spanned by the subdominant eigenspace of the operator
//! `B = (I + D^-1 A) / 2` on the 1-skeleton. This crate builds the
//! combinatorics, the operator and its spectrum, runs the iteration, and
//! checks the geometric verdicts (star-shaped, convex, planar faces,
//! affine equivalence) of the resulting realizations.
//!
//! Modules:
//! - [`poly_core`]: polyhedral complexes, graphs, Conway operators, seeds,
//!   Steinitz validation.
//! - [`spectral`]: Buffon operator, grouped spectra, Colin de Verdière
//!   matrices.
//! - [`dynamics`]: iterated transformation and polygon spectra.
//! - [`realization`]: eigenspace realizations and shape verdicts.
//! - [`symmetry`]: automorphism groups and multiplicity patterns.
//! - [`io`]: OFF meshes and JSON run reports.

pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod poly_core;
pub mod realization;
pub mod reference;
pub mod spectral;
pub mod symmetry;

pub use error::{Error, Result};
pub use poly_core::{Graph, PolyhedralComplex, SteinitzReport, VertexLabel};
pub use realization::{Realization, RealizationSource, ShapeReport};
pub use spectral::{BuffonOperator, CdVMatrix, EigenGroup, SpectralDecomposition};
