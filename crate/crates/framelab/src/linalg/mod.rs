//! Dense linear-algebra kernel: symmetric eigendecomposition (Jacobi),
//! general real-matrix eigenvalues (Hessenberg + shifted QR), numerical
//! rank, and the matrix/vector plumbing shared by the whole crate.

pub mod general;
pub mod matrix;
pub mod symmetric;

pub use general::{general_eigenvalues, spectral_radius, ComplexSpectrum};
pub use matrix::{invert, qr_orthonormal, rank, row_sum_norm, Matrix};
pub use symmetric::{sym_eig, SpectralDecomposition};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("empty matrix has no spectrum")]
    EmptyMatrix,
}
