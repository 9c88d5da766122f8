//! Reference geometry for seeds and Conway-derived solids.
//!
//! Every geometric operator mirrors the combinatorial one in
//! [`crate::poly_core::conway`] vertex for vertex:
//! - dual: polar reciprocation in the unit sphere (face plane `n·x = c`
//!   becomes the point `n / c`);
//! - ambo: edge midpoints;
//! - truncate: cut each edge at fraction `t` from both ends, with `t`
//!   chosen so that regular `p`-gon faces stay regular
//!   (`t = 1 / (2 + 2 cos(π/p))`) or `1/3` for mixed faces;
//! - kis: `dual(truncate(dual(P)))`, which for Platonic `P` is the
//!   Catalan solid and whose vertex order coincides with `kis(P)`.
//!
//! Applied to regular seeds this yields the Archimedean solids and, by
//! polarity, the Catalan solids.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{add, centroid, dot, newell_normal, scale, sub, Point3};
use crate::poly_core::conway::{self, ConwayOp};
use crate::poly_core::seeds::{seed_solid, SeedName};
use crate::poly_core::PolyhedralComplex;

/// Complex with reference coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Solid {
    pub complex: PolyhedralComplex,
    pub coords: Vec<Point3>,
}

impl Solid {
    pub fn seed(seed: SeedName) -> Result<Self> {
        if let SeedName::Polygon(_) = seed {
            return Err(Error::InvalidArgument("polygons have no solid".into()));
        }
        let (complex, coords) = seed_solid(seed)?;
        Ok(Self { complex, coords })
    }

    pub fn apply(&self, op: ConwayOp) -> Result<Self> {
        match op {
            ConwayOp::Dual => self.dual(),
            ConwayOp::Kis => self.kis(),
            ConwayOp::Truncate => self.truncate(),
            ConwayOp::Ambo => self.ambo(),
        }
    }

    pub fn apply_all(&self, ops: &[ConwayOp]) -> Result<Self> {
        ops.iter().try_fold(self.clone(), |s, &op| s.apply(op))
    }

    pub fn dual(&self) -> Result<Self> {
        let complex = conway::dual(&self.complex)?;
        let coords = self
            .complex
            .faces()
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let poly: Vec<Point3> = f.iter().map(|&i| self.coords[i]).collect();
                let n = newell_normal(&poly);
                let c = dot(n, centroid(&poly));
                if c <= 0.0 {
                    return Err(Error::OriginOutside { face: fi });
                }
                Ok(scale(n, 1.0 / c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { complex, coords })
    }

    pub fn ambo(&self) -> Result<Self> {
        let complex = conway::ambo(&self.complex)?;
        let coords = self
            .complex
            .edges()
            .iter()
            .map(|&(a, b)| scale(add(self.coords[a], self.coords[b]), 0.5))
            .collect();
        Ok(Self { complex, coords })
    }

    pub fn truncate(&self) -> Result<Self> {
        let sizes: Vec<usize> = self.complex.faces().iter().map(Vec::len).collect();
        let t = if sizes.windows(2).all(|w| w[0] == w[1]) {
            uniform_truncation(sizes[0])
        } else {
            1.0 / 3.0
        };
        self.truncate_at(t)
    }

    /// Truncation cutting every edge at fraction `t` from each end.
    pub fn truncate_at(&self, t: f64) -> Result<Self> {
        let complex = conway::truncate(&self.complex)?;
        let coords = self
            .complex
            .edges()
            .iter()
            .flat_map(|&(a, b)| {
                let (pa, pb) = (self.coords[a], self.coords[b]);
                let d = sub(pb, pa);
                [add(pa, scale(d, t)), add(pb, scale(d, -t))]
            })
            .collect();
        Ok(Self { complex, coords })
    }

    pub fn kis(&self) -> Result<Self> {
        let complex = conway::kis(&self.complex)?;
        let via = self.dual()?.truncate()?.dual()?;
        Ok(Self {
            complex,
            coords: via.coords,
        })
    }

    pub fn coords_matrix(&self) -> nalgebra::DMatrix<f64> {
        crate::geometry::points_as_rows(&self.coords)
    }
}

/// Truncation fraction keeping a regular `p`-gon regular.
pub fn uniform_truncation(p: usize) -> f64 {
    1.0 / (2.0 + 2.0 * (PI / p as f64).cos())
}

/// The solids worked through in the examples of the Buffon study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    TruncatedCube,
    TriakisTetrahedron,
    RhombicDodecahedron,
    PentakisDodecahedron,
}

impl NamedSolid {
    pub const PLATONIC: [NamedSolid; 5] = [
        NamedSolid::Tetrahedron,
        NamedSolid::Cube,
        NamedSolid::Octahedron,
        NamedSolid::Dodecahedron,
        NamedSolid::Icosahedron,
    ];

    /// Solids with worked spectra and shape verdicts.
    pub const WORKED: [NamedSolid; 6] = [
        NamedSolid::Icosahedron,
        NamedSolid::Dodecahedron,
        NamedSolid::TruncatedCube,
        NamedSolid::TriakisTetrahedron,
        NamedSolid::RhombicDodecahedron,
        NamedSolid::PentakisDodecahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSolid::Tetrahedron => "tetrahedron",
            NamedSolid::Cube => "cube",
            NamedSolid::Octahedron => "octahedron",
            NamedSolid::Dodecahedron => "dodecahedron",
            NamedSolid::Icosahedron => "icosahedron",
            NamedSolid::TruncatedCube => "truncated cube",
            NamedSolid::TriakisTetrahedron => "triakis tetrahedron",
            NamedSolid::RhombicDodecahedron => "rhombic dodecahedron",
            NamedSolid::PentakisDodecahedron => "pentakis dodecahedron",
        }
    }

    /// Seed and Conway operators (applied left to right).
    pub fn recipe(self) -> (SeedName, Vec<ConwayOp>) {
        use ConwayOp::*;
        match self {
            NamedSolid::Tetrahedron => (SeedName::Tetrahedron, vec![]),
            NamedSolid::Cube => (SeedName::Cube, vec![]),
            NamedSolid::Octahedron => (SeedName::Octahedron, vec![]),
            NamedSolid::Dodecahedron => (SeedName::Dodecahedron, vec![]),
            NamedSolid::Icosahedron => (SeedName::Icosahedron, vec![]),
            NamedSolid::TruncatedCube => (SeedName::Cube, vec![Truncate]),
            NamedSolid::TriakisTetrahedron => (SeedName::Tetrahedron, vec![Kis]),
            NamedSolid::RhombicDodecahedron => (SeedName::Cube, vec![Ambo, Dual]),
            NamedSolid::PentakisDodecahedron => (SeedName::Dodecahedron, vec![Kis]),
        }
    }

    pub fn build(self) -> Result<Solid> {
        let (seed, ops) = self.recipe();
        Solid::seed(seed)?.apply_all(&ops)
    }
}
