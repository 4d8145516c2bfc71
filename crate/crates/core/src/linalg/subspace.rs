//! Subspaces of `Q^d` given by explicit bases, and the kernel / image /
//! intersection / quotient operations on them.

use num_traits::{One, Zero};

use super::matrix::{rref, solve, RatMatrix};
use super::rational::Rational;
use super::LinalgError;

/// A basis of a subspace of `Q^ambient_dim`, stored as the columns of a
/// matrix. Columns are linearly independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: RatMatrix,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: RatMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: RatMatrix::identity(ambient_dim),
        }
    }

    /// Wraps a matrix with independent columns. Fails if the columns are dependent.
    pub fn from_matrix(vectors: RatMatrix) -> Result<Self, LinalgError> {
        if vectors.rank() != vectors.cols() {
            return Err(LinalgError::DependentVectors);
        }
        Ok(SubspaceBasis {
            ambient_dim: vectors.rows(),
            vectors,
        })
    }

    pub(crate) fn from_matrix_unchecked(vectors: RatMatrix) -> Self {
        SubspaceBasis {
            ambient_dim: vectors.rows(),
            vectors,
        }
    }

    /// Basis of the span of arbitrary (possibly dependent) vectors: the
    /// first maximal independent subsequence.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let m = RatMatrix::from_columns(ambient_dim, vectors)?;
        Ok(column_space(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<Rational> {
        self.vectors.column(i)
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.vectors.columns()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        solve(&self.vectors, v)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool, LinalgError> {
        check_ambient(self, other)?;
        let r = other.dim();
        Ok(other.vectors.hstack(&self.vectors).rank() == r)
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> Result<bool, LinalgError> {
        Ok(self.dim() == other.dim() && self.is_subspace_of(other)?)
    }

    /// Image of this subspace under `m` (columns `m * v`), reduced to a basis.
    pub fn image_under(&self, m: &RatMatrix) -> SubspaceBasis {
        column_space(&m.mul(&self.vectors))
    }

    /// Rescales every basis vector so that its first nonzero coordinate is 1.
    pub fn normalized(&self) -> SubspaceBasis {
        let cols: Vec<Vec<Rational>> = self
            .vectors()
            .into_iter()
            .map(|mut v| {
                normalize_leading(&mut v);
                v
            })
            .collect();
        SubspaceBasis::from_matrix_unchecked(
            RatMatrix::from_columns(self.ambient_dim, &cols).expect("consistent shape"),
        )
    }
}

pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.recip();
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
    }
}

fn check_ambient(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<(), LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    Ok(())
}

/// Basis of `{v : m v = 0}`. One vector per free column, with a 1 in that
/// column and the pivot variables solved for.
pub fn nullspace(m: &RatMatrix) -> SubspaceBasis {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = RatMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Rational::one());
        for (row, &p) in pivots.iter().enumerate() {
            let x = r.get(row, f);
            if !x.is_zero() {
                basis.set(p, k, -x.clone());
            }
        }
    }
    SubspaceBasis::from_matrix_unchecked(basis)
}

/// Basis of the column span: the pivot columns of `m` itself.
pub fn column_space(m: &RatMatrix) -> SubspaceBasis {
    let (_, pivots) = rref(m);
    let cols: Vec<Vec<Rational>> = pivots.iter().map(|&c| m.column(c)).collect();
    SubspaceBasis::from_matrix_unchecked(
        RatMatrix::from_columns(m.rows(), &cols).expect("consistent shape"),
    )
}

/// Basis of `span(a) ∩ span(b)`, computed from the kernel of `[A | -B]`.
pub fn subspace_intersection(
    a: &SubspaceBasis,
    b: &SubspaceBasis,
) -> Result<SubspaceBasis, LinalgError> {
    check_ambient(a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(SubspaceBasis::empty(a.ambient_dim));
    }
    let system = a.vectors.hstack(&b.vectors.scale(&-Rational::one()));
    let kernel = nullspace(&system);
    let ka = a.dim();
    let mut images = Vec::with_capacity(kernel.dim());
    for v in kernel.vectors() {
        images.push(a.vectors.mul_vec(&v[..ka]));
    }
    let m = RatMatrix::from_columns(a.ambient_dim, &images)?;
    Ok(column_space(&m))
}

/// Vectors of `total` that extend `sub` to a basis of `span(total)`, picked
/// by a left-to-right pivot scan over `[sub | total]`.
pub fn quotient_representatives(
    sub: &SubspaceBasis,
    total: &SubspaceBasis,
) -> Result<SubspaceBasis, LinalgError> {
    check_ambient(sub, total)?;
    if !sub.is_subspace_of(total)? {
        return Err(LinalgError::ContainmentViolation);
    }
    let combined = sub.vectors.hstack(&total.vectors);
    let (_, pivots) = rref(&combined);
    let k = sub.dim();
    let cols: Vec<Vec<Rational>> = pivots
        .iter()
        .filter(|&&c| c >= k)
        .map(|&c| combined.column(c))
        .collect();
    Ok(SubspaceBasis::from_matrix_unchecked(RatMatrix::from_columns(
        total.ambient_dim,
        &cols,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    fn basis(cols: &[&[i64]], ambient: usize) -> SubspaceBasis {
        let vs: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| int(x)).collect())
            .collect();
        SubspaceBasis::from_matrix(RatMatrix::from_columns(ambient, &vs).unwrap()).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&RatMatrix::identity(4)).dim(), 0);
        assert_eq!(nullspace(&RatMatrix::zeros(3, 3)).dim(), 3);
        let k = nullspace(&RatMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vector(0), vec![int(-1), int(1)]);
    }

    #[test]
    fn column_space_examples() {
        assert_eq!(column_space(&RatMatrix::identity(3)).dim(), 3);
        assert_eq!(column_space(&RatMatrix::zeros(3, 2)).dim(), 0);
        let c = column_space(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(c.dim(), 1);
        assert_eq!(c.vector(0), vec![int(1), int(2)]);
    }

    #[test]
    fn intersection_examples() {
        let a = basis(&[&[1, 0, 0], &[0, 1, 0]], 3);
        assert!(subspace_intersection(&a, &a).unwrap().same_span(&a).unwrap());

        // xy-plane and xz-plane meet in the x axis
        let b = basis(&[&[1, 0, 0], &[0, 0, 1]], 3);
        let i = subspace_intersection(&a, &b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.same_span(&basis(&[&[1, 0, 0]], 3)).unwrap());

        let full = SubspaceBasis::full(3);
        let c = basis(&[&[1, 2, 3]], 3);
        assert!(subspace_intersection(&full, &c).unwrap().same_span(&c).unwrap());

        assert!(subspace_intersection(&a, &SubspaceBasis::full(2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let t = basis(&[&[1, 0, 0], &[0, 1, 0]], 3);
        assert_eq!(quotient_representatives(&t, &t).unwrap().dim(), 0);
        let q = quotient_representatives(&SubspaceBasis::empty(3), &t).unwrap();
        assert_eq!(q, t);
        let e1 = basis(&[&[1, 0, 0]], 3);
        let q = quotient_representatives(&e1, &t).unwrap();
        assert_eq!(q.vectors(), vec![vec![int(0), int(1), int(0)]]);

        let e3 = basis(&[&[0, 0, 1]], 3);
        assert_eq!(
            quotient_representatives(&e3, &t),
            Err(LinalgError::ContainmentViolation)
        );
    }

    #[test]
    fn dependent_vectors_rejected() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            SubspaceBasis::from_matrix(m),
            Err(LinalgError::DependentVectors)
        );
    }
}
