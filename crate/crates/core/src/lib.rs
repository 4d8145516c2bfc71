//! Exact computations for Jacobi-Jordan algebras: the zigzag cochain
//! complex, derivations and antiderivations, invariant forms, and formal
//! deformations, all over the rationals.

pub mod algebra;
pub mod cochain;
pub mod deformation;
pub mod linalg;
pub mod representation;
pub mod standard;
pub mod structures;

pub use algebra::{Algebra, AlgebraError, GeneralAlgebra};
pub use cochain::{Cochain, CochainError, CohomologyResult, SymmetryClass};
pub use linalg::{RatMatrix, Rational, SubspaceBasis};
pub use representation::{Representation, RepresentationError};
