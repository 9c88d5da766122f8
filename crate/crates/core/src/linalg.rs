//! Dense linear algebra used by the spectral and geometric code.
//!
//! The symmetric eigensolver is a cyclic Jacobi method; SVD-based helpers
//! (rank, least squares, principal angles) go through nalgebra.

use nalgebra::{DMatrix, DVector};

/// Eigenpairs of a symmetric matrix, sorted by descending eigenvalue.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `1e-13 * n` (times the largest entry magnitude when that exceeds
/// one), followed by one polishing sweep for the eigenvectors.
pub fn jacobi_eigen(matrix: &DMatrix<f64>) -> SymmetricEigen {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "square matrix required");
    let mut a = (matrix + matrix.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.amax().max(1.0);
    let threshold = 1e-13 * n as f64 * scale;
    let mut sweeps = 0;
    let mut polished = false;
    while sweeps < MAX_SWEEPS && !polished {
        polished = off_diagonal_norm(&a) < threshold;
        if polished && sweeps == 0 {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    SymmetricEigen {
        eigenvalues,
        eigenvectors,
        sweeps,
    }
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

// Applies A <- J^T A J and V <- V J for the rotation in the (p, q) plane
// that annihilates A[p, q].
fn rotate(a: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the column space (thin QR via SVD, rank-revealing).
pub fn orthonormal_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > rel_tol * top)
        .collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Principal angles (radians, descending) between the column spaces of
/// `a` and `b`. Sines come from the component of each basis vector of the
/// smaller space orthogonal to the larger, which keeps small angles
/// accurate.
pub fn principal_angles(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Vec<f64> {
    let qa = orthonormal_basis(a, 1e-12);
    let qb = orthonormal_basis(b, 1e-12);
    let (small, large) = if qa.ncols() <= qb.ncols() { (qa, qb) } else { (qb, qa) };
    let residual = &small - &large * (large.transpose() * &small);
    let mut sines = singular_values(&residual);
    sines.resize(small.ncols(), 0.0);
    sines.iter().map(|s| s.clamp(0.0, 1.0).asin()).collect()
}

/// Least-squares solution of `a x = b` via SVD.
pub fn least_squares(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = a.clone().svd(true, true);
    svd.solve(b, 1e-14 * svd.singular_values.amax().max(f64::MIN_POSITIVE))
        .expect("SVD with both factors")
}

/// Gram-Schmidt in the inner product `<x, y> = sum w_i x_i y_i`, applied
/// twice for stability.
pub fn weighted_orthonormalize(cols: &DMatrix<f64>, weights: &[f64]) -> DMatrix<f64> {
    let n = cols.nrows();
    let ip = |x: &DVector<f64>, y: &DVector<f64>| -> f64 {
        (0..n).map(|i| weights[i] * x[i] * y[i]).sum()
    };
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(cols.ncols());
    for c in 0..cols.ncols() {
        let mut v = cols.column(c).into_owned();
        for _ in 0..2 {
            for q in &out {
                let proj = ip(&v, q);
                v -= q * proj;
            }
        }
        let len = ip(&v, &v).sqrt();
        if len > 0.0 {
            v /= len;
        }
        out.push(v);
    }
    DMatrix::from_columns(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes_small_symmetric() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let e = jacobi_eigen(&m);
        let s2 = 2f64.sqrt();
        let expect = [2.0 + s2, 2.0, 2.0 - s2];
        for (got, want) in e.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-14);
        }
        let recon = &e.eigenvectors
            * DMatrix::from_diagonal(&DVector::from_vec(e.eigenvalues.clone()))
            * e.eigenvectors.transpose();
        assert!((recon - m).amax() < 1e-13);
    }

    #[test]
    fn jacobi_handles_diagonal_and_repeated() {
        let m = DMatrix::<f64>::identity(4, 4) * 3.0;
        let e = jacobi_eigen(&m);
        assert_eq!(e.sweeps, 0);
        assert!(e.eigenvalues.iter().all(|&x| x == 3.0));
    }

    #[test]
    fn angles_between_planes() {
        let a = DMatrix::from_row_slice(3, 1, &[1.0, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(3, 1, &[1.0, 1.0, 0.0]);
        let ang = principal_angles(&a, &b);
        assert!((ang[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        let same = principal_angles(&b, &(b.clone() * 3.0));
        assert!(same[0] < 1e-15);
    }

    #[test]
    fn rank_and_lstsq() {
        let m = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]);
        assert_eq!(numerical_rank(&m, 1e-8), 1);
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let x = DMatrix::from_row_slice(2, 1, &[2.0, -1.0]);
        let sol = least_squares(&a, &(&a * &x));
        assert!((sol - x).amax() < 1e-14);
    }
}
