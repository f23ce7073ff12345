//! Dense matrices, exact characteristic polynomials and two independent
//! eigenvalue routes: QR on the matrix and root finding on the polynomial.

mod charpoly;
mod eigen;
mod matrix;
mod roots;
mod spectrum;

use thiserror::Error;

pub use charpoly::{char_poly_exact, linear_subdigraph_charpoly, CharPoly, SquarefreeFactor, LINEAR_SUBDIGRAPH_MAX_N};
pub use eigen::{backward_error, eigenvalues, eigenvalues_with_profile};
pub use matrix::{
    adjacency, diagonal_similarity_witness, diagonally_similar_to_symmetrization, geometric_symmetrization, Matrix,
};
pub use roots::{poly_roots, relative_residual};
pub use spectrum::{canonical_cmp, multiset_distance, Spectrum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("order {n} exceeds the limit of {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("a[{i}][{j}] * a[{j}][{i}] is negative")]
    NegativeProduct { i: usize, j: usize },
    #[error("rows do not form a square matrix")]
    NotSquare,
    #[error("matrix has non-finite entries")]
    NonFinite,
}
