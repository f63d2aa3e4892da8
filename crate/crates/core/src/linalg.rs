//! Dense complex linear-algebra helpers shared by the frame and
//! experiment modules. Everything is backed by nalgebra; matrices at the
//! scales used here (N <= 256) make O(N^3) routines a non-issue.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized
/// first so that rounding noise in the off-diagonal does not leak into
/// the decomposition.
pub fn hermitian_eig(m: &CMat) -> (Vec<f64>, CMat) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Apply a scalar function to a Hermitian matrix through its
/// eigendecomposition and act on a vector: `f(M) x`.
pub fn hermitian_apply(
    eigenvalues: &[f64],
    eigenvectors: &CMat,
    f: impl Fn(f64) -> f64,
    x: &[Complex64],
) -> Vec<Complex64> {
    let xv = nalgebra::DVector::from_column_slice(x);
    let mut coeffs = eigenvectors.adjoint() * xv;
    for (c, &ev) in coeffs.iter_mut().zip(eigenvalues) {
        *c *= f(ev);
    }
    let out = eigenvectors * coeffs;
    out.iter().copied().collect()
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |a, &b| a.max(b))
}

/// Smallest and largest singular values.
pub fn singular_extremes(m: &CMat) -> (f64, f64) {
    let sv = m.clone().svd(false, false).singular_values;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &s in sv.iter() {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (lo, hi)
}

/// Matrix inverse; fails if the matrix is numerically singular.
pub fn inverse(m: &CMat) -> Result<CMat> {
    let (lo, hi) = singular_extremes(m);
    if lo <= 1e-14 * hi {
        return Err(Error::Singular { smin: lo, smax: hi });
    }
    m.clone()
        .try_inverse()
        .ok_or(Error::Singular { smin: lo, smax: hi })
}

/// Moore-Penrose pseudoinverse with singular values below
/// `tol * sigma_max` treated as zero.
pub fn svd_pseudoinverse(m: &CMat, tol: f64) -> CMat {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd with u");
    let vt = svd.v_t.expect("svd with v_t");
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = tol * smax;
    let inv: Vec<Complex64> = svd
        .singular_values
        .iter()
        .map(|&s| {
            if s > cut {
                Complex64::new(1.0 / s, 0.0)
            } else {
                Complex64::default()
            }
        })
        .collect();
    // V S^+ U^H, assembled column-by-column to avoid a dense diagonal
    let v = vt.adjoint();
    let uh = u.adjoint();
    let mut scaled = v;
    for (j, f) in inv.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0);
        for x in scaled.column_mut(j).iter_mut() {
            *x *= f;
        }
    }
    scaled * uh
}

/// Orthonormal basis of the column space (columns of the result),
/// keeping singular directions above `tol * sigma_max`.
pub fn range_basis(m: &CMat, tol: f64) -> CMat {
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("svd with u");
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > tol * smax)
        .count();
    u.columns(0, rank).into_owned()
}
