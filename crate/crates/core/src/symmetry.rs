//! Graph automorphisms and eigenvalue multiplicity patterns.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly_core::{skeleton, Graph, PolyhedralComplex};
use crate::spectral::{buffon_matrix, spectrum, SpectralDecomposition, DEFAULT_GROUP_TOL};

/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: usize = 2_000_000;

pub type Permutation = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub order: usize,
    pub generators: Vec<Permutation>,
    pub is_vertex_transitive: bool,
    /// Every element, identity first, in search order.
    #[serde(skip)]
    pub elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    /// Number of elements of order exactly 3.
    pub fn order_three_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|p| !is_identity(p) && is_identity(&compose(p, &compose(p, p))))
            .count()
    }

    /// Operational test for a Platonic symmetry group: order at least 24
    /// and divisible by 12, with at least the eight 3-fold rotations of the
    /// tetrahedral group. Dihedral groups have at most two elements of
    /// order 3.
    pub fn has_platonic_symmetry(&self) -> bool {
        self.order >= 24 && self.order.is_multiple_of(12) && self.order_three_count() >= 8
    }
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// `(p ∘ q)(i) = p[q[i]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

pub fn preserves_adjacency(graph: &Graph, p: &[usize]) -> bool {
    graph.edges().iter().all(|&(a, b)| graph.is_adjacent(p[a], p[b]))
}

/// All automorphisms by backtracking over vertices in BFS order. A
/// candidate image must match degree and distance profile, and keep
/// every distance to previously assigned vertices.
pub fn automorphisms(graph: &Graph, budget: usize) -> Result<AutomorphismGroup> {
    let n = graph.vertex_count();
    let dist = graph.distance_matrix();
    let profile: Vec<Vec<usize>> = dist
        .iter()
        .map(|row| {
            let mut counts = vec![0; n];
            for &d in row {
                counts[d] += 1;
            }
            counts
        })
        .collect();
    let order = bfs_order(graph);
    let mut search = Search {
        graph,
        dist: &dist,
        profile: &profile,
        order: &order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    search.extend(0)?;
    let elements = search.found;
    let transitive = {
        let orbit: HashSet<usize> = elements.iter().map(|p| p[0]).collect();
        orbit.len() == n
    };
    let generators = pick_generators(&elements);
    Ok(AutomorphismGroup {
        order: elements.len(),
        generators,
        is_vertex_transitive: transitive,
        elements,
    })
}

fn bfs_order(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &w in graph.neighbors(v) {
            if !std::mem::replace(&mut seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    out
}

struct Search<'a> {
    graph: &'a Graph,
    dist: &'a [Vec<usize>],
    profile: &'a [Vec<usize>],
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    budget: usize,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { budget: self.budget });
        }
        if depth == self.order.len() {
            debug_assert!(preserves_adjacency(self.graph, &self.image));
            self.found.push(self.image.clone());
            return Ok(());
        }
        let v = self.order[depth];
        for w in 0..self.graph.vertex_count() {
            if self.used[w]
                || self.graph.degree(w) != self.graph.degree(v)
                || self.profile[w] != self.profile[v]
            {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.dist[v][u] == self.dist[w][self.image[u]]);
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            self.extend(depth + 1)?;
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
        Ok(())
    }
}

/// Greedy generating set: keep an element whenever it lies outside the
/// group generated so far.
fn pick_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let mut generators: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = elements.first().into_iter().cloned().collect();
    for p in elements {
        if closure.contains(p) {
            continue;
        }
        generators.push(p.clone());
        closure = generate(&generators, p.len());
        if closure.len() == elements.len() {
            break;
        }
    }
    generators
}

/// The group generated by `generators`, by breadth-first closure.
pub fn generate(generators: &[Permutation], n: usize) -> HashSet<Permutation> {
    let identity: Permutation = (0..n).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// True iff the ordered multiplicity sequence equals `expected`.
pub fn multiplicity_pattern(decomp: &SpectralDecomposition, expected: &[usize]) -> bool {
    decomp.multiplicities() == expected
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdominantVerdict {
    pub automorphism_order: usize,
    pub platonic_symmetry: bool,
    pub subdominant_eigenvalue: f64,
    pub multiplicity: usize,
    pub multiplicity_is_three: bool,
    /// Set when the group is not certified Platonic, or the multiplicity
    /// differs from 3.
    pub warning: Option<String>,
}

pub fn subdominant_multiplicity_check(complex: &PolyhedralComplex) -> Result<SubdominantVerdict> {
    let graph = skeleton(complex);
    let group = automorphisms(&graph, DEFAULT_BUDGET)?;
    let decomp = spectrum(&buffon_matrix(&graph), DEFAULT_GROUP_TOL)?;
    let sub = crate::spectral::subdominant_space(&decomp)?;
    let platonic = group.has_platonic_symmetry();
    let warning = match (platonic, sub.multiplicity == 3) {
        (true, true) => None,
        (true, false) => Some(format!(
            "Platonic symmetry but subdominant multiplicity {}",
            sub.multiplicity
        )),
        (false, _) => Some(format!(
            "automorphism group of order {} is not Platonic; subdominant multiplicity {}",
            group.order, sub.multiplicity
        )),
    };
    Ok(SubdominantVerdict {
        automorphism_order: group.order,
        platonic_symmetry: platonic,
        subdominant_eigenvalue: sub.eigenvalue,
        multiplicity: sub.multiplicity,
        multiplicity_is_three: sub.multiplicity == 3,
        warning,
    })
}
