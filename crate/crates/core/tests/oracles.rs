//! Independent oracles for the spectral solver and the automorphism
//! search.

use std::collections::{HashMap, HashSet};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use buffon::poly_core::random::random_triangulation;
use buffon::poly_core::{conway, seed_complex, skeleton, PolyhedralComplex};
use buffon::reference::NamedSolid;
use buffon::spectral::{buffon_matrix, spectrum, DEFAULT_GROUP_TOL};
use buffon::symmetry::{automorphisms, DEFAULT_BUDGET};

/// Householder reduction of a symmetric matrix to tridiagonal form:
/// (diagonal, off-diagonal).
fn tridiagonalize(s: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = s.nrows();
    let mut a = s.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let alpha = -x[0].signum() * x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut v = x.clone();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        let mut h = DMatrix::<f64>::identity(n, n);
        for i in 0..v.len() {
            for j in 0..v.len() {
                h[(k + 1 + i, k + 1 + j)] -= 2.0 * v[i] * v[j] / (vn * vn);
            }
        }
        a = &h * a * &h;
    }
    let diag = (0..n).map(|i| a[(i, i)]).collect();
    let off = (1..n).map(|i| a[(i, i - 1)]).collect();
    (diag, off)
}

/// Number of eigenvalues below `x` of a symmetric tridiagonal matrix: the
/// negative pivots of its LDL^T factorization at shift `x` (Sylvester's
/// law of inertia, Sturm sequence form).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut negatives = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - e2 / q;
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            negatives += 1;
        }
    }
    negatives
}

/// All eigenvalues by bisection on `count_below`, ascending.
fn bisection_eigenvalues(s: &DMatrix<f64>) -> Vec<f64> {
    let n = s.nrows();
    let (diag, off) = tridiagonalize(s);
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-1.5, 1.5);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(&diag, &off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

#[test]
fn jacobi_matches_inertia_bisection_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut cases: Vec<PolyhedralComplex> = ["tetrahedron", "cube", "octahedron", "prism(3)", "prism(4)"]
        .iter()
        .map(|s| seed_complex(s).unwrap())
        .collect();
    for _ in 0..40 {
        let n = rng.random_range(4..=8);
        cases.push(random_triangulation(n, 2 * n, &mut rng).unwrap());
    }
    for c in cases {
        let op = buffon_matrix(&skeleton(&c));
        let mut got = spectrum(&op, DEFAULT_GROUP_TOL).unwrap().flat_eigenvalues();
        got.reverse();
        let want = bisection_eigenvalues(&op.symmetric_conjugate());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
    }
}

/// Automorphisms of a polyhedral map by flag propagation: an automorphism
/// is fixed by the image of one directed edge and an orientation choice,
/// then extended face by face.
fn flag_automorphisms(c: &PolyhedralComplex) -> HashSet<Vec<usize>> {
    let next: HashMap<(usize, usize), usize> = c
        .faces()
        .iter()
        .flat_map(|f| (0..f.len()).map(move |k| ((f[k], f[(k + 1) % f.len()]), f[(k + 2) % f.len()])))
        .collect();
    // Successor of b after a in the face to the right of a -> b.
    let prev: HashMap<(usize, usize), usize> = c
        .faces()
        .iter()
        .flat_map(|f| {
            let m = f.len();
            (0..m).map(move |k| ((f[(k + 1) % m], f[k]), f[(k + m - 1) % m]))
        })
        .collect();
    let (a0, b0) = c.edges()[0];
    let mut out = HashSet::new();
    for &(a, b) in c.edges() {
        for (x, y) in [(a, b), (b, a)] {
            for reflect in [false, true] {
                let mut image = vec![usize::MAX; c.vertex_count()];
                let mut stack = vec![((a0, b0), (x, y))];
                let mut ok = true;
                let mut seen = HashSet::new();
                while let Some(((p, q), (r, s))) = stack.pop() {
                    if !seen.insert((p, q)) {
                        continue;
                    }
                    for (u, v) in [(p, r), (q, s)] {
                        if image[u] == usize::MAX {
                            image[u] = v;
                        } else if image[u] != v {
                            ok = false;
                        }
                    }
                    if !ok {
                        break;
                    }
                    let step = |map: &HashMap<(usize, usize), usize>, e: (usize, usize)| map.get(&e).copied();
                    let (n1, n2) = if reflect {
                        (step(&next, (p, q)), step(&prev, (r, s)))
                    } else {
                        (step(&next, (p, q)), step(&next, (r, s)))
                    };
                    match (n1, n2) {
                        (Some(t), Some(u)) => stack.push(((q, t), (s, u))),
                        _ => ok = false,
                    }
                    stack.push(((q, p), (s, r)));
                }
                if ok && image.iter().all(|&v| v != usize::MAX) {
                    let distinct: HashSet<usize> = image.iter().copied().collect();
                    if distinct.len() == image.len() {
                        out.insert(image);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn backtracking_search_agrees_with_flag_propagation() {
    let mut cases: Vec<PolyhedralComplex> = NamedSolid::WORKED
        .iter()
        .chain(NamedSolid::PLATONIC.iter())
        .map(|s| s.build().unwrap().complex)
        .collect();
    cases.push(seed_complex("prism(6)").unwrap());
    cases.push(conway::ambo(&seed_complex("cube").unwrap()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        cases.push(random_triangulation(rng.random_range(6..14), 8, &mut rng).unwrap());
    }
    for c in cases {
        let graph = skeleton(&c);
        let group = automorphisms(&graph, DEFAULT_BUDGET).unwrap();
        let oracle = flag_automorphisms(&c);
        let found: HashSet<Vec<usize>> = group.elements.iter().cloned().collect();
        assert_eq!(found, oracle, "{} vertices", c.vertex_count());
    }
}
