//! Exact linear algebra over the rationals.
//!
//! Everything downstream (cocycles, coboundaries, derivations, invariant
//! forms) is a rank or kernel computation, so there is no floating point
//! anywhere. Elimination pivots on the first nonzero entry, left to right,
//! which makes every returned basis reproducible bit for bit.

mod matrix;
mod rational;
mod sparse;
mod subspace;

use thiserror::Error;

pub use matrix::{rref, solve, RatMatrix};
pub use rational::{format_rational, int, one, parse_rational, rat, zero, Rational};
pub use sparse::{
    canonicalize, independent_subsequence, sparse_nullspace, to_dense, to_sparse, SparseEchelon,
    SparseVec,
};
pub use subspace::{
    column_space, normalize_leading, nullspace, quotient_representatives, subspace_intersection,
    SubspaceBasis,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("subspace is not contained in the total space")]
    ContainmentViolation,
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}
