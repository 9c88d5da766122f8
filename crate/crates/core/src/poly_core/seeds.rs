//! Seed solids with frozen vertex orderings.
//!
//! Reference coordinates (`phi` is the golden ratio):
//! - tetrahedron: `(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)`.
//! - cube: `(±1,±1,±1)`, index `4[x>0] + 2[y>0] + [z>0]`.
//! - octahedron: `+x, -x, +y, -y, +z, -z`.
//! - icosahedron: `(0, s, t·phi)`, `(s, t·phi, 0)`, `(t·phi, 0, s)` for
//!   `(s, t)` in `(-,-), (-,+), (+,-), (+,+)`, in that block order.
//! - dodecahedron: the eight cube vertices in cube order, then
//!   `(0, s/phi, t·phi)`, `(s/phi, t·phi, 0)`, `(t·phi, 0, s/phi)` with the
//!   same sign order.
//! - prism(n): bottom ring `k` at angle `2πk/n`, height `-h`; top ring
//!   `n + k` at `+h`, with `2h` equal to the polygon side.
//! - polygon(n): the cycle `0 - 1 - ... - (n-1) - 0`.
//!
//! Faces of the tetrahedron and prisms are listed explicitly; the other
//! Platonic faces are the hull facets of the coordinates above, in the
//! deterministic order produced by [`crate::geometry::convex_hull_faces`].

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::complex::PolyhedralComplex;
use super::graph::Graph;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_faces, Point3};

pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedName {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    Prism(usize),
    Polygon(usize),
}

impl SeedName {
    pub fn is_platonic(self) -> bool {
        !matches!(self, SeedName::Prism(_) | SeedName::Polygon(_))
    }
}

impl std::fmt::Display for SeedName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedName::Tetrahedron => write!(f, "tetrahedron"),
            SeedName::Cube => write!(f, "cube"),
            SeedName::Octahedron => write!(f, "octahedron"),
            SeedName::Dodecahedron => write!(f, "dodecahedron"),
            SeedName::Icosahedron => write!(f, "icosahedron"),
            SeedName::Prism(n) => write!(f, "prism({n})"),
            SeedName::Polygon(n) => write!(f, "polygon({n})"),
        }
    }
}

impl FromStr for SeedName {
    type Err = Error;

    /// Accepts `prism(6)`, `prism6` and `prism:6` forms for the families.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let family = |prefix: &str| -> Option<Result<usize>> {
            let rest = lower.strip_prefix(prefix)?;
            let digits = rest.trim_start_matches([':', '(']).trim_end_matches(')');
            Some(
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::UnknownSeed(s.to_string()))
                    .and_then(|n| {
                        if n >= 3 {
                            Ok(n)
                        } else {
                            Err(Error::InvalidArgument(format!("{prefix} needs n >= 3, got {n}")))
                        }
                    }),
            )
        };
        match lower.as_str() {
            "tetrahedron" => return Ok(SeedName::Tetrahedron),
            "cube" | "hexahedron" => return Ok(SeedName::Cube),
            "octahedron" => return Ok(SeedName::Octahedron),
            "dodecahedron" => return Ok(SeedName::Dodecahedron),
            "icosahedron" => return Ok(SeedName::Icosahedron),
            _ => {}
        }
        if let Some(n) = family("prism") {
            return n.map(SeedName::Prism);
        }
        if let Some(n) = family("polygon") {
            return n.map(SeedName::Polygon);
        }
        Err(Error::UnknownSeed(s.to_string()))
    }
}

/// A generated seed: a closed polyhedral complex, or a bare cycle for
/// polygons.
#[derive(Debug, Clone, PartialEq)]
pub enum Seed {
    Polyhedron(PolyhedralComplex),
    Polygon(Graph),
}

pub fn generate_seed(name: &str) -> Result<Seed> {
    let seed: SeedName = name.parse()?;
    match seed {
        SeedName::Polygon(n) => Ok(Seed::Polygon(Graph::cycle(n)?)),
        other => Ok(Seed::Polyhedron(seed_solid(other)?.0)),
    }
}

/// Convenience wrapper returning only polyhedral seeds.
pub fn seed_complex(name: &str) -> Result<PolyhedralComplex> {
    match generate_seed(name)? {
        Seed::Polyhedron(c) => Ok(c),
        Seed::Polygon(_) => Err(Error::InvalidArgument(format!("'{name}' is a polygon"))),
    }
}

/// Complex together with its reference coordinates.
pub fn seed_solid(seed: SeedName) -> Result<(PolyhedralComplex, Vec<Point3>)> {
    let coords = seed_coordinates(seed)?;
    let faces = match seed {
        SeedName::Tetrahedron => vec![vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]],
        SeedName::Prism(n) => {
            let mut faces = vec![(0..n).rev().collect::<Vec<_>>(), (n..2 * n).collect()];
            for k in 0..n {
                let k1 = (k + 1) % n;
                faces.push(vec![k, k1, n + k1, n + k]);
            }
            faces
        }
        _ => convex_hull_faces(&coords, 1e-9),
    };
    let complex = PolyhedralComplex::new(coords.len(), faces)?;
    Ok((complex, coords))
}

pub fn seed_coordinates(seed: SeedName) -> Result<Vec<Point3>> {
    let signs = [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)];
    Ok(match seed {
        SeedName::Tetrahedron => vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        SeedName::Cube => cube_vertices(),
        SeedName::Octahedron => vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        SeedName::Icosahedron => {
            let mut v = Vec::with_capacity(12);
            v.extend(signs.iter().map(|&(s, t)| [0.0, s, t * PHI]));
            v.extend(signs.iter().map(|&(s, t)| [s, t * PHI, 0.0]));
            v.extend(signs.iter().map(|&(s, t)| [t * PHI, 0.0, s]));
            v
        }
        SeedName::Dodecahedron => {
            let mut v = cube_vertices();
            let ip = 1.0 / PHI;
            v.extend(signs.iter().map(|&(s, t)| [0.0, s * ip, t * PHI]));
            v.extend(signs.iter().map(|&(s, t)| [s * ip, t * PHI, 0.0]));
            v.extend(signs.iter().map(|&(s, t)| [t * PHI, 0.0, s * ip]));
            v
        }
        SeedName::Prism(n) => {
            let h = (PI / n as f64).sin();
            let ring = |z: f64| {
                (0..n).map(move |k| {
                    let a = 2.0 * PI * k as f64 / n as f64;
                    [a.cos(), a.sin(), z]
                })
            };
            ring(-h).chain(ring(h)).collect()
        }
        SeedName::Polygon(n) => (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                [a.cos(), a.sin(), 0.0]
            })
            .collect(),
    })
}

fn cube_vertices() -> Vec<Point3> {
    let s = [-1.0, 1.0];
    let mut v = Vec::with_capacity(8);
    for x in s {
        for y in s {
            for z in s {
                v.push([x, y, z]);
            }
        }
    }
    v
}
