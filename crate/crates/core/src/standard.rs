//! Small named algebras and forms used throughout tests and the CLI catalog.

use crate::algebra::Algebra;
use crate::linalg::{int, RatMatrix};

/// `e1 e1 = e2`, `e1 e3 = e4`; every other product zero.
pub fn j4() -> Algebra {
    Algebra::from_products(4, &[((0, 0), vec![(1, int(1))]), ((0, 2), vec![(3, int(1))])])
        .expect("well-formed")
}

/// Gram matrix of `B(e1,e4) = B(e2,e3) = 1` on [`j4`].
pub fn j4_form() -> RatMatrix {
    RatMatrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]])
}

/// Two copies of the plane `u u = v`: `e1 e1 = e2`, `e3 e3 = e4`.
pub fn a12_plus_a12() -> Algebra {
    Algebra::from_products(4, &[((0, 0), vec![(1, int(1))]), ((2, 2), vec![(3, int(1))])])
        .expect("well-formed")
}

/// `B(e1,e2) = B(e3,e4) = 1` on [`a12_plus_a12`].
pub fn a12_plus_a12_form() -> RatMatrix {
    RatMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
}

/// `e1 e1 = e3`, `e2 e2 = e3`: every invariant form is degenerate.
pub fn no_invariant_metric() -> Algebra {
    Algebra::from_products(3, &[((0, 0), vec![(2, int(1))]), ((1, 1), vec![(2, int(1))])])
        .expect("well-formed")
}
