//! Real symmetric eigensolvers used across the crate.
//!
//! - [`jacobi`]: cyclic Jacobi rotations, for tiny matrices and as an
//!   independent check on the other routes.
//! - [`dense`]: Householder tridiagonalization followed by implicit QL.
//! - [`lanczos`]: Krylov iteration with full reorthogonalization and
//!   deflation, for the large sparse exact-diagonalization matrices.

pub mod dense;
pub mod jacobi;
pub mod lanczos;
pub mod sparse;

pub use dense::{symmetric_eigen, tridiagonal_eigen, SymmetricEigen};
pub use jacobi::jacobi_eigen;
pub use lanczos::{lowest_eigenpair_from, lowest_eigenpairs, LanczosOptions, LinearOperator};
pub use sparse::CsrMatrix;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y -= alpha * x`
pub(crate) fn axpy_neg(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= alpha * xi;
    }
}
