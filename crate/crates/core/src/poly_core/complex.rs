use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a vertex of a derived complex came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexLabel {
    Named(String),
    /// Copy of a vertex of the source complex.
    Vertex(usize),
    /// Vertex standing for a face of the source complex (dual).
    Face(usize),
    /// Pyramid apex erected on source face `face`; `base` lists the face's
    /// vertices, which keep their indices in the kis complex.
    KisApex { face: usize, base: Vec<usize> },
    /// Midpoint of the source edge `{a, b}` (ambo).
    EdgeMidpoint(usize, usize),
    /// Truncation vertex on source edge `from -> to`, next to `from`.
    EdgeNear { from: usize, to: usize },
}

/// Combinatorial type of a closed oriented polyhedral surface.
///
/// Faces are cycles of vertex indices oriented counterclockwise as seen
/// from outside. Edges are derived and stored as sorted pairs `(i, j)` with
/// `i < j`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedralComplex {
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<VertexLabel>>,
    #[serde(skip)]
    edges: Vec<(usize, usize)>,
}

impl PolyhedralComplex {
    /// Validates the face list and derives the edge set.
    pub fn new(vertex_count: usize, faces: Vec<Vec<usize>>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::NoFaces);
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::DegenerateFace {
                    face: fi,
                    reason: format!("only {} vertices", face.len()),
                });
            }
            for &v in face {
                if v >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        face: fi,
                        index: v,
                        vertex_count,
                    });
                }
            }
            let mut seen = face.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DegenerateFace {
                    face: fi,
                    reason: "repeated vertex".into(),
                });
            }
            for k in 0..face.len() {
                let a = face[k];
                let b = face[(k + 1) % face.len()];
                if directed.insert((a, b), fi).is_some() {
                    return Err(Error::NonManifoldEdge(a.min(b), a.max(b)));
                }
            }
        }
        let mut edges = Vec::with_capacity(directed.len() / 2);
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return Err(Error::NonManifoldEdge(a.min(b), a.max(b)));
            }
            if a < b {
                edges.push((a, b));
            }
        }
        edges.sort_unstable();
        let characteristic = vertex_count as i64 - edges.len() as i64 + faces.len() as i64;
        if characteristic != 2 {
            return Err(Error::EulerViolation { characteristic });
        }
        Ok(Self {
            vertex_count,
            faces,
            labels: None,
            edges,
        })
    }

    /// Attaches per-vertex labels; the length must match the vertex count.
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    /// Index of `{a, b}` in [`Self::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn is_simplicial(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }

    /// First face with a length other than three, if any.
    pub fn non_triangle(&self) -> Option<(usize, usize)> {
        self.faces
            .iter()
            .enumerate()
            .find(|(_, f)| f.len() != 3)
            .map(|(i, f)| (i, f.len()))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Map from directed edge `(a, b)` to the face traversing it.
    pub fn directed_edge_faces(&self) -> HashMap<(usize, usize), usize> {
        let mut map = HashMap::with_capacity(2 * self.edges.len());
        for (fi, face) in self.faces.iter().enumerate() {
            for k in 0..face.len() {
                map.insert((face[k], face[(k + 1) % face.len()]), fi);
            }
        }
        map
    }

    /// Faces and neighbours around every vertex, counterclockwise as seen
    /// from outside. Entry `k` of `stars[v]` is `(face, u)` where the face
    /// contains the directed edge `u -> v`.
    pub fn vertex_stars(&self) -> Vec<Vec<(usize, usize)>> {
        let dir = self.directed_edge_faces();
        let mut first_face = vec![usize::MAX; self.vertex_count];
        for (fi, face) in self.faces.iter().enumerate() {
            for &v in face {
                if first_face[v] == usize::MAX {
                    first_face[v] = fi;
                }
            }
        }
        (0..self.vertex_count)
            .map(|v| {
                // Walking "face containing v -> u, then the face containing
                // u -> v" turns clockwise around v; the predecessor walk used
                // here turns counterclockwise.
                let mut star = Vec::new();
                let start = first_face[v];
                let mut face = start;
                loop {
                    let f = &self.faces[face];
                    let pos = f.iter().position(|&x| x == v).expect("vertex in face");
                    let prev = f[(pos + f.len() - 1) % f.len()];
                    star.push((face, prev));
                    face = dir[&(v, prev)];
                    if face == start {
                        break;
                    }
                }
                star
            })
            .collect()
    }

    /// Same complex with vertex `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.vertex_count)?;
        let faces = self
            .faces
            .iter()
            .map(|f| f.iter().map(|&v| perm[v]).collect())
            .collect();
        let mut out = Self::new(self.vertex_count, faces)?;
        if let Some(labels) = &self.labels {
            let mut moved = labels.clone();
            for (i, l) in labels.iter().enumerate() {
                moved[perm[i]] = l.clone();
            }
            out.labels = Some(moved);
        }
        Ok(out)
    }

    /// Re-derives cached data after deserialization.
    pub fn revalidated(self) -> Result<Self> {
        let labels = self.labels;
        let mut c = Self::new(self.vertex_count, self.faces)?;
        c.labels = labels;
        Ok(c)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation of length {} for {} vertices",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
    }
    Ok(())
}

/// Canonical form of a face cycle: rotated to start at its smallest index.
pub fn canonical_cycle(face: &[usize]) -> Vec<usize> {
    let start = face
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    face[start..].iter().chain(&face[..start]).copied().collect()
}
