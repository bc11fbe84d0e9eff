//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector};

/// Relative tolerance for rank decisions on singular values.
pub(crate) const RANK_TOL: f64 = 1e-9;

/// Orthonormal basis of the null space of `m`, computed from the symmetric
/// eigendecomposition of `m^T m`. Robust for wide matrices and the zero
/// matrix alike.
pub(crate) fn null_space(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let ncols = m.ncols();
    if m.nrows() == 0 {
        return (0..ncols)
            .map(|i| DVector::from_fn(ncols, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
    }
    let gram = m.transpose() * m;
    let eig = gram.symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    // Floor the squared tolerance at 1e-13: Gram eigenvalues of genuinely
    // null directions carry eigensolver noise of order eps * max, well above
    // tol^2 * max for tol = 1e-9.
    let cutoff = if max > 0.0 {
        (tol * tol).max(1e-13) * max
    } else {
        f64::INFINITY
    };
    let mut basis = Vec::new();
    for (idx, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev <= cutoff {
            basis.push(eig.eigenvectors.column(idx).into_owned());
        }
    }
    basis
}

/// Symmetric square root of a symmetric positive-definite matrix.
pub(crate) fn sym_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    sym_power(m, 0.5)
}

/// Inverse symmetric square root of a symmetric positive-definite matrix.
pub(crate) fn sym_inv_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    sym_power(m, -0.5)
}

/// `m^p` for symmetric positive-definite `m`, via eigendecomposition.
pub(crate) fn sym_power(m: &DMatrix<f64>, p: f64) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|ev| ev.powf(p)));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// `exp(s * m)` for symmetric `m`.
pub(crate) fn sym_exp(m: &DMatrix<f64>, s: f64) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|ev| (s * ev).exp()));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Eigenvalue extremes (min, max) of a symmetric matrix.
pub(crate) fn sym_eig_range(m: &DMatrix<f64>) -> (f64, f64) {
    let ev = m.clone().symmetric_eigen().eigenvalues;
    (ev.min(), ev.max())
}

/// Frobenius norm of the commutator `ab - ba`.
pub(crate) fn commutator_norm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a * b - b * a).norm()
}

/// Maximum absolute off-diagonal entry.
pub(crate) fn max_offdiag(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}
