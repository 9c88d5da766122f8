//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use buffon::dynamics::{
    affine_regular_residual, buffon_step, iterate_to_limit, perturb, polygon_spectrum,
    CoordinateState, DirectedPolygon, IterateOptions,
};
use buffon::linalg::principal_angles;
use buffon::poly_core::random::random_triangulation;
use buffon::poly_core::{conway_apply, seed_complex, skeleton, ConwayOp, PolyhedralComplex};
use buffon::realization::{
    affine_match, check_convex, check_star_shaped, diagonal_edge_ratios, face_planarity,
    pyramid_height_ratio, realize, Realization, RealizationSource,
};
use buffon::reference::{NamedSolid, Solid};
use buffon::spectral::{
    buffon_matrix, cdv_matrix, face_buffon_matrix, spectrum, SpectralDecomposition,
    DEFAULT_GROUP_TOL,
};
use buffon::symmetry::{automorphisms, DEFAULT_BUDGET};

type Verdict = (bool, String);

fn decompose(c: &PolyhedralComplex) -> SpectralDecomposition {
    spectrum(&buffon_matrix(&skeleton(c)), DEFAULT_GROUP_TOL).expect("spectrum")
}

fn subdominant(solid: &Solid) -> Realization {
    let d = decompose(&solid.complex);
    realize(&d.groups[1], 1, &solid.complex).expect("realize")
}

fn reference(solid: &Solid, name: &str) -> Realization {
    Realization::new(
        solid.coords_matrix(),
        RealizationSource::Reference { name: name.into() },
        solid.complex.clone(),
    )
    .expect("reference realization")
}

fn golden(solid: NamedSolid) -> Vec<(f64, usize)> {
    let s5 = 5f64.sqrt();
    let s3 = 3f64.sqrt();
    let s17 = 17f64.sqrt();
    match solid {
        NamedSolid::Icosahedron => vec![(1.0, 1), ((5.0 + s5) / 10.0, 3), (0.4, 5), ((5.0 - s5) / 10.0, 3)],
        NamedSolid::Dodecahedron => vec![
            (1.0, 1),
            ((3.0 + s5) / 6.0, 3),
            (2.0 / 3.0, 5),
            (0.5, 4),
            (1.0 / 6.0, 4),
            ((3.0 - s5) / 6.0, 3),
        ],
        NamedSolid::TruncatedCube => vec![
            (1.0, 1),
            ((7.0 + s17) / 12.0, 3),
            (5.0 / 6.0, 3),
            (2.0 / 3.0, 1),
            (0.5, 5),
            (1.0 / 3.0, 3),
            ((7.0 - s17) / 12.0, 3),
            (1.0 / 6.0, 5),
        ],
        NamedSolid::TriakisTetrahedron => vec![(1.0, 1), (7.0 / 12.0, 3), (1.0 / 3.0, 3), (0.25, 1)],
        NamedSolid::RhombicDodecahedron => {
            vec![(1.0, 1), ((3.0 + s3) / 6.0, 3), (0.5, 6), ((3.0 - s3) / 6.0, 3), (0.0, 1)]
        }
        NamedSolid::PentakisDodecahedron => {
            let a = (725.0 + 240.0 * s5).sqrt();
            let b = (29.0 - 48.0 / s5).sqrt();
            let c = 385f64.sqrt();
            vec![
                (1.0, 1),
                ((60.0 + 5.0 * s5 + a) / 120.0, 3),
                ((65.0 + c) / 120.0, 5),
                ((12.0 - s5 + b) / 24.0, 3),
                (0.5, 4),
                ((65.0 - c) / 120.0, 5),
                (1.0 / 3.0, 4),
                ((60.0 + 5.0 * s5 - a) / 120.0, 3),
                ((12.0 - s5 - b) / 24.0, 3),
                (0.25, 1),
            ]
        }
        _ => unreachable!("no golden spectrum for {}", solid.name()),
    }
}

fn criterion_1() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for solid in NamedSolid::WORKED {
        let d = decompose(&solid.build().unwrap().complex);
        let want = golden(solid);
        if d.multiplicities() != want.iter().map(|w| w.1).collect::<Vec<_>>() {
            bad.push(format!("{} multiplicities {:?}", solid.name(), d.multiplicities()));
            continue;
        }
        for (g, (v, _)) in d.groups.iter().zip(&want) {
            worst = worst.max((g.eigenvalue - v).abs());
        }
    }
    (bad.is_empty() && worst < 1e-9, format!("max eigenvalue error {worst:.2e} {bad:?}"))
}

fn criterion_2() -> Verdict {
    let cases = [
        NamedSolid::Tetrahedron,
        NamedSolid::Octahedron,
        NamedSolid::Icosahedron,
        NamedSolid::TriakisTetrahedron,
        NamedSolid::PentakisDodecahedron,
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for solid in cases {
        let s = solid.build().unwrap();
        let group = automorphisms(&skeleton(&s.complex), DEFAULT_BUDGET).unwrap();
        let platonic = group.has_platonic_symmetry();
        let d = decompose(&s.complex);
        let mult = d.groups[1].multiplicity;
        let star = check_star_shaped(&subdominant(&s)).unwrap().star_shaped;
        ok &= platonic && mult == 3 && star;
        lines.push(format!("{}: |G|={} m={} star={}", solid.name(), group.order, mult, star));
    }
    (ok, lines.join("; "))
}

fn criterion_3() -> Verdict {
    let mut worst: f64 = 0.0;
    for solid in NamedSolid::PLATONIC {
        let s = solid.build().unwrap();
        let r = subdominant(&s);
        let id: Vec<usize> = (0..r.coords.nrows()).collect();
        worst = worst.max(affine_match(&r.coords, &s.coords_matrix(), &id).unwrap());
    }
    (worst < 1e-8, format!("max affine residual {worst:.2e}"))
}

fn criterion_4() -> Verdict {
    let s = NamedSolid::TruncatedCube.build().unwrap();
    let r = subdominant(&s);
    let edge_faces = s.complex.directed_edge_faces();
    let target = (3.0 + 17f64.sqrt()) / 4.0;
    let regular = 1.0 + 2f64.sqrt();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for face in s.complex.faces().iter().filter(|f| f.len() == 8) {
        for (k, (t, resid)) in diagonal_edge_ratios(&r.coords, face).into_iter().enumerate() {
            let (a, b) = (face[(k + 1) % 8], face[(k + 2) % 8]);
            // diagonals parallel to an edge shared by two octagons
            if s.complex.faces()[edge_faces[&(b, a)]].len() == 8 {
                worst = worst.max((t - target).abs()).max(resid);
                count += 1;
            }
        }
    }
    let gap = (target - regular).abs();
    (
        count == 24 && worst < 1e-8 && gap > 0.6,
        format!("{count} diagonals, max deviation from (3+√17)/4 {worst:.2e}, |ratio - (1+√2)| = {gap:.4}"),
    )
}

fn criterion_5() -> Verdict {
    let r = subdominant(&NamedSolid::TriakisTetrahedron.build().unwrap());
    let star = check_star_shaped(&r).unwrap().star_shaped;
    let convex = check_convex(&r).unwrap();
    (star && !convex, format!("star_shaped={star} convex={convex}"))
}

fn criterion_6() -> Verdict {
    let r = subdominant(&NamedSolid::RhombicDodecahedron.build().unwrap());
    let p = face_planarity(&r.coords, &r.complex).unwrap();
    let min = p.deviations.iter().copied().fold(f64::INFINITY, f64::min);
    (
        p.deviations.len() == 12 && p.non_planar_count() == 12,
        format!("{} of {} faces non-planar, smallest deviation {min:.3e}", p.non_planar_count(), p.deviations.len()),
    )
}

fn criterion_7() -> Verdict {
    let s = NamedSolid::PentakisDodecahedron.build().unwrap();
    let buffon_want = 1.0 - (5f64.sqrt() + (29.0 + 48.0 / 5f64.sqrt()).sqrt()) / 12.0;
    let catalan_want = (1.0 - 1.0 / 5f64.sqrt()) / 3.0;
    let b = pyramid_height_ratio(&subdominant(&s)).unwrap();
    let c = pyramid_height_ratio(&reference(&s, "catalan")).unwrap();
    let eb = b.ratios.iter().map(|r| (r.1 - buffon_want).abs()).fold(0.0, f64::max);
    let ec = c.ratios.iter().map(|r| (r.1 - catalan_want).abs()).fold(0.0, f64::max);
    (
        b.ratios.len() == 12 && eb < 1e-6 && ec < 1e-6,
        format!("Buffon {:.9} (err {eb:.1e}), Catalan {:.9} (err {ec:.1e})", b.mean, c.mean),
    )
}

fn criterion_8() -> Verdict {
    let mut spec_err: f64 = 0.0;
    let mut worst_resid: f64 = 0.0;
    let mut failures = 0;
    for n in 3..=12 {
        let map = DirectedPolygon::new(n).unwrap();
        let closed = polygon_spectrum(n).unwrap().eigenvalues;
        // independent oracles: Fourier vectors and a real Schur decomposition
        let m = map.matrix();
        for (j, lambda) in closed.iter().enumerate() {
            let v: Vec<Complex64> = (0..n)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * (j * k) as f64 / n as f64))
                .collect();
            for i in 0..n {
                let bv: Complex64 = (0..n).map(|k| v[k] * m[(i, k)]).sum();
                spec_err = spec_err.max((bv - lambda * v[i]).norm());
            }
        }
        let mut schur: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        for lambda in &closed {
            let (pos, d) = schur
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - lambda).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            spec_err = spec_err.max(d);
            schur.swap_remove(pos);
        }
        for seed in 0..100 {
            let x = perturb(&DMatrix::zeros(n, 2), 1.0, 1000 * n as u64 + seed);
            match iterate_to_limit(&x, &map, &IterateOptions::default()) {
                Ok(out) => worst_resid = worst_resid.max(affine_regular_residual(&out.limit.coords)),
                Err(_) => failures += 1,
            }
        }
    }
    (
        spec_err < 1e-12 && worst_resid < 1e-8 && failures == 0,
        format!("spectrum error {spec_err:.2e}; 1000 polygons, max affine-regular residual {worst_resid:.2e}, {failures} failures"),
    )
}

fn criterion_9() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for solid in NamedSolid::WORKED {
        let s = solid.build().unwrap();
        let d = decompose(&s.complex);
        let graph = skeleton(&s.complex);
        for seed in 0..20 {
            let x = perturb(&s.coords_matrix(), 0.3, seed);
            match iterate_to_limit(&x, &graph, &IterateOptions::default()) {
                Ok(out) => {
                    let angles = principal_angles(&out.limit.coords, &d.groups[1].basis);
                    worst = worst.max(angles.iter().copied().fold(0.0, f64::max));
                }
                Err(e) => failures.push(format!("{} seed {seed}: {e}", solid.name())),
            }
        }
    }
    (
        worst < 1e-6 && failures.is_empty(),
        format!("120 runs, max principal angle {worst:.2e} {failures:?}"),
    )
}

fn criterion_10() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 3..=8 {
        let s = Solid::seed(format!("prism({n})").parse().unwrap()).unwrap();
        let mult = decompose(&s.complex).groups[1].multiplicity;
        let x = perturb(&s.coords_matrix(), 0.1, n as u64);
        let collapse = iterate_to_limit(&x, &skeleton(&s.complex), &IterateOptions::default())
            .map(|o| o.collapse_dim.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        ok &= mult == 2 && collapse == "2";
        lines.push(format!("n={n}: m={mult} collapse={collapse}"));
    }
    (ok, lines.join("; "))
}

fn criterion_11() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for solid in NamedSolid::PLATONIC {
        let s = solid.build().unwrap();
        let u = s.coords_matrix();
        let m = cdv_matrix(&u, &s.complex).unwrap();
        let g = skeleton(&s.complex);
        let n = g.vertex_count();
        let signs = (0..n).all(|i| {
            (0..n).all(|j| i == j || if g.is_adjacent(i, j) { m.matrix[(i, j)] < 0.0 } else { m.matrix[(i, j)] == 0.0 })
        });
        let mu = (&m.matrix * &u).amax();
        let good = m.corank == 3 && m.negative_count == 1 && signs && mu < 1e-8;
        ok &= good;
        lines.push(format!(
            "{}: corank {} neg {} signs {} |MU| {mu:.1e}",
            solid.name(),
            m.corank,
            m.negative_count,
            signs
        ));
    }
    (ok, lines.join("; "))
}

fn random_sphere(rng: &mut ChaCha8Rng) -> PolyhedralComplex {
    let n = rng.random_range(5..=30);
    random_triangulation(n, 3 * n, rng).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
}

fn criterion_12() -> Verdict {
    const CASES: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut fails: Vec<&str> = Vec::new();

    // row-stochasticity
    for _ in 0..CASES {
        let b = buffon_matrix(&skeleton(&random_sphere(&mut rng))).matrix;
        let bad = (0..b.nrows()).any(|i| (b.row(i).sum() - 1.0).abs() > 1e-12) || b.iter().any(|&x| x < 0.0);
        if bad {
            fails.push("row-stochastic");
        }
    }
    // affine equivariance
    for _ in 0..CASES {
        let g = skeleton(&random_sphere(&mut rng));
        let x = random_matrix(&mut rng, g.vertex_count(), 3);
        let a = random_matrix(&mut rng, 3, 3);
        let t = random_matrix(&mut rng, 1, 3);
        let shift = |m: &DMatrix<f64>| DMatrix::from_fn(m.nrows(), 3, |i, j| m[(i, j)] + t[(0, j)]);
        let lhs = buffon_step(&CoordinateState::new(shift(&(&x * &a))), &g).coords;
        let rhs = shift(&(buffon_step(&CoordinateState::new(x.clone()), &g).coords * &a));
        if (lhs - rhs).amax() > 1e-12 {
            fails.push("affine equivariance");
        }
    }
    // degree-weighted orthonormality across all groups
    for _ in 0..CASES {
        let c = random_sphere(&mut rng);
        let d = decompose(&c);
        let basis = DMatrix::from_columns(
            &d.groups.iter().flat_map(|g| g.basis.column_iter().map(|c| c.into_owned())).collect::<Vec<DVector<f64>>>(),
        );
        let deg = DMatrix::from_diagonal(&DVector::from_vec(
            skeleton(&c).degrees().into_iter().map(|k| k as f64).collect(),
        ));
        let gram = basis.transpose() * deg * &basis;
        if (gram - DMatrix::identity(c.vertex_count(), c.vertex_count())).amax() > 1e-10 {
            fails.push("D-orthonormality");
        }
    }
    // face-variant eigenvalue map
    for _ in 0..CASES {
        let c = random_sphere(&mut rng);
        let op = buffon_matrix(&skeleton(&c));
        let face = face_buffon_matrix(&op, &c).unwrap();
        let e = spectrum(&op, 1e-12).map(|d| d.flat_eigenvalues());
        let f = spectrum(&face, 1e-12).map(|d| d.flat_eigenvalues());
        match (e, f) {
            (Ok(e), Ok(f)) => {
                if e.iter().zip(&f).any(|(l, m)| ((4.0 * l - 1.0) / 3.0 - m).abs() > 1e-10) {
                    fails.push("face map");
                }
            }
            _ => fails.push("face map spectrum"),
        }
    }
    // Euler laws for Conway operators
    let seeds = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron", "prism(5)"];
    let ops = [ConwayOp::Dual, ConwayOp::Kis, ConwayOp::Truncate, ConwayOp::Ambo];
    for _ in 0..CASES {
        let mut c = seed_complex(seeds.choose(&mut rng).unwrap()).unwrap();
        for _ in 0..rng.random_range(1..=2) {
            let op = *ops.choose(&mut rng).unwrap();
            let (v, e, f) = (c.vertex_count(), c.edge_count(), c.face_count());
            let next = conway_apply(op, &c).unwrap();
            let want = match op {
                ConwayOp::Dual => (f, e, v),
                ConwayOp::Kis => (v + f, 3 * e, 2 * e),
                ConwayOp::Truncate => (2 * e, 3 * e, v + f),
                ConwayOp::Ambo => (e, 2 * e, v + f),
            };
            if (next.vertex_count(), next.edge_count(), next.face_count()) != want || next.euler_characteristic() != 2 {
                fails.push("Conway Euler");
            }
            c = next;
        }
    }
    // spectrum invariance under relabeling
    for _ in 0..CASES {
        let c = random_sphere(&mut rng);
        let mut perm: Vec<usize> = (0..c.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let a = spectrum(&buffon_matrix(&skeleton(&c)), 1e-12).map(|d| d.flat_eigenvalues());
        let b = spectrum(&buffon_matrix(&skeleton(&c.relabeled(&perm).unwrap())), 1e-12)
            .map(|d| d.flat_eigenvalues());
        match (a, b) {
            (Ok(a), Ok(b)) if a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12) => {}
            _ => fails.push("relabeling"),
        }
    }
    fails.dedup();
    (fails.is_empty(), format!("6 properties x {CASES} cases; failures: {fails:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("golden spectra", criterion_1),
        ("subdominant multiplicity 3 and star-shaped under Platonic symmetry", criterion_2),
        ("Platonic realizations are affine regular", criterion_3),
        ("truncated cube octagon ratio", criterion_4),
        ("triakis tetrahedron star-shaped, not convex", criterion_5),
        ("rhombic dodecahedron faces break", criterion_6),
        ("pentakis pyramid ratios", criterion_7),
        ("polygon spectrum and affine-regular limits", criterion_8),
        ("iteration limit equals subdominant eigenspace", criterion_9),
        ("prism collapse", criterion_10),
        ("Colin de Verdiere matrices of Platonic solids", criterion_11),
        ("randomized invariants", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (pass, detail) = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        if !pass {
            failed += 1;
        }
        println!("[{}] criterion {:>2}: {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
