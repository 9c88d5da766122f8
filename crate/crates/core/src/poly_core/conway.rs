//! The four Conway operators needed to reach the solids studied here.
//!
//! Vertex orderings of the outputs are fixed so that reference geometry
//! built by the same operators lines up vertex for vertex:
//! - `dual`: vertex `f` is face `f` of the input.
//! - `kis`: input vertices first, then one apex per input face.
//! - `truncate`: vertex `2k` sits on edge `k = {a, b}` (a < b) next to `a`,
//!   vertex `2k + 1` next to `b`. Faces: truncated input faces, then one
//!   face per input vertex.
//! - `ambo`: vertex `k` is the midpoint of edge `k`. Faces: input faces,
//!   then one face per input vertex.

use serde::{Deserialize, Serialize};

use super::complex::{PolyhedralComplex, VertexLabel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConwayOp {
    Dual,
    Kis,
    Truncate,
    Ambo,
}

impl ConwayOp {
    pub fn name(self) -> &'static str {
        match self {
            ConwayOp::Dual => "dual",
            ConwayOp::Kis => "kis",
            ConwayOp::Truncate => "truncate",
            ConwayOp::Ambo => "ambo",
        }
    }
}

impl std::str::FromStr for ConwayOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dual" | "d" => Ok(ConwayOp::Dual),
            "kis" | "k" => Ok(ConwayOp::Kis),
            "truncate" | "t" => Ok(ConwayOp::Truncate),
            "ambo" | "a" => Ok(ConwayOp::Ambo),
            other => Err(Error::InvalidArgument(format!("unknown Conway operator '{other}'"))),
        }
    }
}

pub fn conway_apply(op: ConwayOp, complex: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    match op {
        ConwayOp::Dual => dual(complex),
        ConwayOp::Kis => kis(complex),
        ConwayOp::Truncate => truncate(complex),
        ConwayOp::Ambo => ambo(complex),
    }
}

pub fn dual(p: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let faces = p
        .vertex_stars()
        .into_iter()
        .map(|star| star.into_iter().map(|(f, _)| f).collect())
        .collect();
    PolyhedralComplex::new(p.face_count(), faces)?
        .with_labels((0..p.face_count()).map(VertexLabel::Face).collect())
}

pub fn kis(p: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let n = p.vertex_count();
    let mut faces = Vec::with_capacity(2 * p.edge_count());
    for (fi, face) in p.faces().iter().enumerate() {
        for k in 0..face.len() {
            faces.push(vec![face[k], face[(k + 1) % face.len()], n + fi]);
        }
    }
    let labels = (0..n)
        .map(VertexLabel::Vertex)
        .chain(p.faces().iter().enumerate().map(|(fi, f)| VertexLabel::KisApex {
            face: fi,
            base: f.clone(),
        }))
        .collect();
    PolyhedralComplex::new(n + p.face_count(), faces)?.with_labels(labels)
}

fn near(p: &PolyhedralComplex, from: usize, to: usize) -> usize {
    let k = p.edge_index(from, to).expect("edge of complex");
    if from < to {
        2 * k
    } else {
        2 * k + 1
    }
}

pub fn truncate(p: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let mut faces: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .map(|face| {
            (0..face.len())
                .flat_map(|k| {
                    let a = face[k];
                    let b = face[(k + 1) % face.len()];
                    [near(p, a, b), near(p, b, a)]
                })
                .collect()
        })
        .collect();
    for (v, star) in p.vertex_stars().into_iter().enumerate() {
        faces.push(star.into_iter().map(|(_, u)| near(p, v, u)).collect());
    }
    let labels = p
        .edges()
        .iter()
        .flat_map(|&(a, b)| {
            [
                VertexLabel::EdgeNear { from: a, to: b },
                VertexLabel::EdgeNear { from: b, to: a },
            ]
        })
        .collect();
    PolyhedralComplex::new(2 * p.edge_count(), faces)?.with_labels(labels)
}

pub fn ambo(p: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let edge = |a: usize, b: usize| p.edge_index(a, b).expect("edge of complex");
    let mut faces: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .map(|face| (0..face.len()).map(|k| edge(face[k], face[(k + 1) % face.len()])).collect())
        .collect();
    for (v, star) in p.vertex_stars().into_iter().enumerate() {
        faces.push(star.into_iter().map(|(_, u)| edge(v, u)).collect());
    }
    let labels = p.edges().iter().map(|&(a, b)| VertexLabel::EdgeMidpoint(a, b)).collect();
    PolyhedralComplex::new(p.edge_count(), faces)?.with_labels(labels)
}
