//! Random simplicial spheres for property testing.

use rand::Rng;

use super::complex::PolyhedralComplex;
use crate::error::Result;

/// Random triangulated sphere on `n >= 4` vertices: a stacked triangulation
/// grown by face insertions, then scrambled by `flips` random edge flips.
/// Every flip keeps the surface simple with minimum degree three, so the
/// skeleton stays planar and 3-connected.
pub fn random_triangulation<R: Rng + ?Sized>(
    n: usize,
    flips: usize,
    rng: &mut R,
) -> Result<PolyhedralComplex> {
    let n = n.max(4);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    for v in 4..n {
        let fi = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    for _ in 0..flips {
        let fi = rng.random_range(0..faces.len());
        let k = rng.random_range(0..3);
        try_flip(&mut faces, n, fi, k);
    }
    PolyhedralComplex::new(n, faces.into_iter().map(|f| f.to_vec()).collect())
}

fn try_flip(faces: &mut [[usize; 3]], n: usize, fi: usize, k: usize) -> bool {
    let f = faces[fi];
    let (a, b, c) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
    // twin face contains b -> a
    let Some(gi) = faces.iter().position(|g| {
        (0..3).any(|m| g[m] == b && g[(m + 1) % 3] == a)
    }) else {
        return false;
    };
    let g = faces[gi];
    let d = *g.iter().find(|&&x| x != a && x != b).expect("triangle");
    let mut degree = vec![0usize; n];
    let mut adjacent_cd = false;
    for t in faces.iter() {
        for m in 0..3 {
            degree[t[m]] += 1;
            let (x, y) = (t[m], t[(m + 1) % 3]);
            if (x == c && y == d) || (x == d && y == c) {
                adjacent_cd = true;
            }
        }
    }
    // each vertex appears in deg faces, so face incidences equal degrees
    if adjacent_cd || c == d || degree[a] <= 3 || degree[b] <= 3 {
        return false;
    }
    faces[fi] = [a, d, c];
    faces[gi] = [b, c, d];
    true
}
