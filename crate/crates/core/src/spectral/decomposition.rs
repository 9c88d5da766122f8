use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::operator::BuffonOperator;
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, weighted_orthonormalize};

/// One eigenvalue of `B` with a basis of right eigenvectors (columns).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    #[serde(skip, default = "empty_basis")]
    pub basis: DMatrix<f64>,
}

fn empty_basis() -> DMatrix<f64> {
    DMatrix::zeros(0, 0)
}

/// Eigenvalues of the Buffon operator grouped by multiplicity, in
/// descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub groups: Vec<EigenGroup>,
    pub tolerance_used: f64,
}

impl SpectralDecomposition {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.multiplicity).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.eigenvalue).collect()
    }

    /// Every eigenvalue repeated by multiplicity.
    pub fn flat_eigenvalues(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.eigenvalue, g.multiplicity))
            .collect()
    }
}

/// Spectrum of `B` via its symmetric conjugate `D^{1/2} B D^{-1/2}`.
///
/// Eigenvectors are mapped back by `D^{-1/2}`, so each group basis is
/// orthonormal in the degree-weighted inner product. Eigenvalues closer
/// than `group_tol` are merged; a gap in `(group_tol, 10 group_tol)` is
/// reported as [`Error::ToleranceAmbiguity`].
pub fn spectrum(op: &BuffonOperator, group_tol: f64) -> Result<SpectralDecomposition> {
    if !(group_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("group tolerance must be positive, got {group_tol}")));
    }
    let n = op.size();
    let eig = jacobi_eigen(&op.symmetric_conjugate());
    let weights: Vec<f64> = op.degrees.iter().map(|&d| d as f64).collect();
    let inv_sqrt: Vec<f64> = weights.iter().map(|w| 1.0 / w.sqrt()).collect();

    let mut ranges: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n {
            ranges.push((start, k));
            break;
        }
        let gap = eig.eigenvalues[k - 1] - eig.eigenvalues[k];
        if gap <= group_tol {
            continue;
        }
        if gap < 10.0 * group_tol {
            return Err(Error::ToleranceAmbiguity {
                upper: eig.eigenvalues[k - 1],
                lower: eig.eigenvalues[k],
                gap,
                tol: group_tol,
            });
        }
        ranges.push((start, k));
        start = k;
    }

    let groups = ranges
        .into_iter()
        .enumerate()
        .map(|(gi, (a, b))| {
            let value = eig.eigenvalues[a..b].iter().sum::<f64>() / (b - a) as f64;
            let raw = DMatrix::from_fn(n, b - a, |r, c| eig.eigenvectors[(r, a + c)] * inv_sqrt[r]);
            let mut basis = weighted_orthonormalize(&raw, &weights);
            if gi == 0 && b - a == 1 {
                // Fix the sign of the Perron vector to be positive.
                let s: f64 = basis.column(0).sum();
                if s < 0.0 {
                    basis.neg_mut();
                }
            }
            EigenGroup {
                eigenvalue: value,
                multiplicity: b - a,
                basis,
            }
        })
        .collect();
    Ok(SpectralDecomposition {
        groups,
        tolerance_used: group_tol,
    })
}

/// The group of the largest eigenvalue below the top one.
pub fn subdominant_space(decomp: &SpectralDecomposition) -> Result<&EigenGroup> {
    decomp
        .groups
        .get(1)
        .ok_or_else(|| Error::InvalidArgument("spectrum has a single eigenvalue group".into()))
}

/// `max_i |(B v - λ v)_i|` over a group's basis.
pub fn group_residual(op: &BuffonOperator, group: &EigenGroup) -> f64 {
    let r = &op.matrix * &group.basis - &group.basis * group.eigenvalue;
    r.amax()
}

/// `sum_i d_i v_i` for a vector.
pub fn degree_weighted_sum(degrees: &[usize], v: &DVector<f64>) -> f64 {
    degrees.iter().zip(v.iter()).map(|(&d, x)| d as f64 * x).sum()
}
