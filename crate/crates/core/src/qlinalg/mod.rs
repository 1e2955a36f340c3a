//! Exact rational sparse linear algebra.
//!
//! Everything here is exact: ranks, kernels, determinants and inverses are
//! computed over the rationals with the pivot rule "leftmost nonzero column,
//! smallest row index", so outputs are deterministic.

mod rational;
mod reduce;
mod sparse;

use thiserror::Error;

pub use rational::{
    format_rational, int, is_zero, parse_rational, rat, rational_sqrt, rationalize,
    ParseRationalError, Rational, Scalar,
};
pub use reduce::{
    determinant, inverse, kernel_basis, rank, rref, skew_kernel_parity, solve, Rref, SkewParity, Z2,
};
pub use sparse::SparseMat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}
