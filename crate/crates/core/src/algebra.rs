//! Finite-dimensional algebras given by structure constants, and the
//! Jacobi-Jordan predicates on them.
//!
//! [`Algebra`] is always commutative; that is enforced when it is built.
//! [`GeneralAlgebra`] drops the symmetry requirement and exists for the
//! admissibility and anti-associativity checks, which start from arbitrary
//! nonassociative products.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{column_space, nullspace, LinalgError, RatMatrix, Rational, SubspaceBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure tensor has {found} entries, expected {expected}")]
    StructureLength { expected: usize, found: usize },
    #[error("product is not commutative: e{}*e{} != e{}*e{}", .i + 1, .j + 1, .j + 1, .i + 1)]
    NotCommutative { i: usize, j: usize },
    #[error("expected {expected} basis names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("vector has length {found}, algebra has dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("conflicting values given for e{}*e{}", .i + 1, .j + 1)]
    SymmetryConflict { i: usize, j: usize },
    #[error("basis change matrix is singular")]
    SingularMatrix,
    #[error("basis change matrix must be {dim}x{dim}")]
    BasisChangeShape { dim: usize },
    #[error("power series stabilised at a nonzero subspace of dimension {dim}; not nilpotent")]
    NonNilpotent { dim: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// A product rule `e_i * e_j = sum_k q_k e_k` with 0-based indices.
pub type ProductRule = ((usize, usize), Vec<(usize, Rational)>);

/// Nonassociative algebra over Q, not necessarily commutative.
/// `structure[(i*n + j)*n + k]` is the coefficient of `e_k` in `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    structure: Vec<Rational>,
}

impl GeneralAlgebra {
    pub fn new(dim: usize, structure: Vec<Rational>) -> Result<Self, AlgebraError> {
        let expected = dim * dim * dim;
        if structure.len() != expected {
            return Err(AlgebraError::StructureLength {
                expected,
                found: structure.len(),
            });
        }
        Ok(GeneralAlgebra {
            dim,
            basis_names: default_names(dim),
            structure,
        })
    }

    pub fn zero(dim: usize) -> Self {
        GeneralAlgebra {
            dim,
            basis_names: default_names(dim),
            structure: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds from product rules taken literally (no symmetric completion).
    pub fn from_products(dim: usize, rules: &[ProductRule]) -> Result<Self, AlgebraError> {
        let mut a = Self::zero(dim);
        for ((i, j), terms) in rules {
            for (k, q) in terms {
                for &idx in [*i, *j, *k].iter() {
                    if idx >= dim {
                        return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                    }
                }
                a.structure[(i * dim + j) * dim + k] += q;
            }
        }
        Ok(a)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.dim {
            return Err(AlgebraError::NameCount {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &[Rational] {
        &self.structure
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// `e_i e_j` as a coordinate slice.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim;
        &self.structure[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.product_unchecked(x, y))
    }

    pub(crate) fn product_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, x: &[Rational]) -> Result<(), AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `y -> x y`.
    pub fn left_multiplication(&self, x: &[Rational]) -> Result<RatMatrix, AlgebraError> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m.add_to(k, j, &(xi * c));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `y -> e_i y`.
    pub fn left_multiplication_basis(&self, i: usize) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, j, c.clone());
                }
            }
        }
        m
    }

    /// Anti-associator `(e_i e_j) e_k + e_i (e_j e_k)` checked on every
    /// ordered basis triple.
    pub fn check_anti_associative(&self) -> AntiAssociativityReport {
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = unit(n, i);
                    let ej = unit(n, j);
                    let ek = unit(n, k);
                    let left = self.product_unchecked(&self.product_unchecked(&ei, &ej), &ek);
                    let right = self.product_unchecked(&ei, &self.product_unchecked(&ej, &ek));
                    let residual = add(&left, &right);
                    if !is_zero_vec(&residual) {
                        violations.push(TripleResidual {
                            indices: [i, j, k],
                            residual,
                        });
                    }
                }
            }
        }
        AntiAssociativityReport { violations }
    }

    /// The algebra with product `{x, y} = xy + yx`.
    pub fn anticommutator_algebra(&self) -> Algebra {
        let n = self.dim;
        let mut structure = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.coeff(i, j, k) + self.coeff(j, i, k);
                    structure[(i * n + j) * n + k] = v;
                }
            }
        }
        Algebra {
            inner: GeneralAlgebra {
                dim: n,
                basis_names: self.basis_names.clone(),
                structure,
            },
        }
    }

    pub fn is_jacobi_jordan_admissible(&self) -> bool {
        self.anticommutator_algebra().validate_jacobi_jordan().holds()
    }
}

/// A commutative algebra over Q given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    inner: GeneralAlgebra,
}

impl Algebra {
    /// Fails with [`AlgebraError::NotCommutative`] unless `c[i][j][k] = c[j][i][k]`.
    pub fn new(dim: usize, structure: Vec<Rational>) -> Result<Self, AlgebraError> {
        Self::from_general(GeneralAlgebra::new(dim, structure)?)
    }

    pub fn from_general(inner: GeneralAlgebra) -> Result<Self, AlgebraError> {
        let n = inner.dim;
        for i in 0..n {
            for j in 0..i {
                if inner.basis_product(i, j) != inner.basis_product(j, i) {
                    return Err(AlgebraError::NotCommutative { i: j, j: i });
                }
            }
        }
        Ok(Algebra { inner })
    }

    pub fn zero(dim: usize) -> Self {
        Algebra {
            inner: GeneralAlgebra::zero(dim),
        }
    }

    /// Builds from product rules with symmetric completion: a rule for
    /// `(i, j)` also defines `(j, i)`. Giving both with different values is
    /// a [`AlgebraError::SymmetryConflict`].
    pub fn from_products(dim: usize, rules: &[ProductRule]) -> Result<Self, AlgebraError> {
        let mut seen: Vec<Option<Vec<Rational>>> = vec![None; dim * dim];
        for ((i, j), terms) in rules {
            for &idx in [*i, *j].iter().chain(terms.iter().map(|(k, _)| k)) {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                }
            }
            let mut v = vec![Rational::zero(); dim];
            for (k, q) in terms {
                v[*k] += q;
            }
            let (a, b) = if i <= j { (*i, *j) } else { (*j, *i) };
            match &seen[a * dim + b] {
                Some(prev) if *prev != v => return Err(AlgebraError::SymmetryConflict { i: a, j: b }),
                _ => seen[a * dim + b] = Some(v),
            }
        }
        let mut structure = vec![Rational::zero(); dim * dim * dim];
        for a in 0..dim {
            for b in a..dim {
                if let Some(v) = &seen[a * dim + b] {
                    for (k, q) in v.iter().enumerate() {
                        structure[(a * dim + b) * dim + k] = q.clone();
                        structure[(b * dim + a) * dim + k] = q.clone();
                    }
                }
            }
        }
        Self::new(dim, structure)
    }

    pub fn with_names(self, names: Vec<String>) -> Result<Self, AlgebraError> {
        Ok(Algebra {
            inner: self.inner.with_names(names)?,
        })
    }

    pub fn as_general(&self) -> &GeneralAlgebra {
        &self.inner
    }

    pub fn into_general(self) -> GeneralAlgebra {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.inner.basis_names
    }

    pub fn structure(&self) -> &[Rational] {
        &self.inner.structure
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.inner.coeff(i, j, k)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.inner.basis_product(i, j)
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        self.inner.product(x, y)
    }

    pub(crate) fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.inner.product_unchecked(x, y)
    }

    pub fn left_multiplication(&self, x: &[Rational]) -> Result<RatMatrix, AlgebraError> {
        self.inner.left_multiplication(x)
    }

    pub fn left_multiplication_basis(&self, i: usize) -> RatMatrix {
        self.inner.left_multiplication_basis(i)
    }

    /// `J(e_i, e_j, e_k)` for all `i <= j <= k`; the identity is symmetric in
    /// its arguments for a commutative product, so this covers every triple.
    pub fn validate_jacobi_jordan(&self) -> ValidationReport {
        let n = self.dim();
        let mut jacobi_violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let residual = self.jacobiator(i, j, k);
                    if !is_zero_vec(&residual) {
                        jacobi_violations.push(TripleResidual {
                            indices: [i, j, k],
                            residual,
                        });
                    }
                }
            }
        }
        ValidationReport {
            is_commutative: true,
            jacobi_violations,
            cube_violations: Vec::new(),
        }
    }

    /// `e_i(e_j e_k) + e_j(e_k e_i) + e_k(e_i e_j)`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let n = self.dim();
        let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
        let mut r = self.mul(&ei, self.basis_product(j, k));
        r = add(&r, &self.mul(&ej, self.basis_product(k, i)));
        add(&r, &self.mul(&ek, self.basis_product(i, j)))
    }

    /// Checks `x(xx) = 0` through its full linearization: for each multiset
    /// `{i, j, k}` the coefficient of the monomial `x_i x_j x_k` in `x(xx)`
    /// must vanish. Each failing multiset is reported with a concrete witness
    /// `x` supported on `{e_i, e_j, e_k}` and the nonzero value of `x(xx)`.
    pub fn check_cube_zero(&self) -> ValidationReport {
        let n = self.dim();
        let mut cube_violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let coeff = self.cube_coefficient([i, j, k]);
                    if is_zero_vec(&coeff) {
                        continue;
                    }
                    let (witness, value) = self.cube_witness([i, j, k]);
                    cube_violations.push(CubeViolation {
                        monomial: [i, j, k],
                        coefficient: coeff,
                        witness,
                        value,
                    });
                }
            }
        }
        ValidationReport {
            is_commutative: true,
            jacobi_violations: Vec::new(),
            cube_violations,
        }
    }

    fn cube_coefficient(&self, m: [usize; 3]) -> Vec<Rational> {
        let n = self.dim();
        let mut perms: Vec<[usize; 3]> = vec![
            [m[0], m[1], m[2]],
            [m[0], m[2], m[1]],
            [m[1], m[0], m[2]],
            [m[1], m[2], m[0]],
            [m[2], m[0], m[1]],
            [m[2], m[1], m[0]],
        ];
        perms.sort();
        perms.dedup();
        let mut acc = vec![Rational::zero(); n];
        for [a, b, c] in perms {
            acc = add(&acc, &self.mul(&unit(n, a), self.basis_product(b, c)));
        }
        acc
    }

    fn cube_witness(&self, m: [usize; 3]) -> (Vec<Rational>, Vec<Rational>) {
        let n = self.dim();
        let mut support = m.to_vec();
        support.dedup();
        // The restriction of x(xx) to the support is a nonzero cubic, so it
        // cannot vanish on the whole grid {1..4}^|support|.
        let mut weights = vec![1i64; support.len()];
        loop {
            let mut x = vec![Rational::zero(); n];
            for (s, w) in support.iter().zip(&weights) {
                x[*s] = Rational::from_integer((*w).into());
            }
            let value = self.mul(&x, &self.mul(&x, &x));
            if !is_zero_vec(&value) {
                return (x, value);
            }
            let mut pos = 0;
            loop {
                weights[pos] += 1;
                if weights[pos] <= 4 {
                    break;
                }
                weights[pos] = 1;
                pos += 1;
                assert!(pos < weights.len(), "nonzero cubic vanished on grid");
            }
        }
    }

    /// Linearized Jordan identity
    /// `x((yz)t) + y((zx)t) + z((xy)t) = (xy)(zt) + (yz)(xt) + (zx)(yt)`
    /// on all basis 4-tuples.
    pub fn check_jordan_identity(&self) -> bool {
        let n = self.dim();
        let e: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let p = |a: usize, b: usize| self.basis_product(a, b).to_vec();
                        let lhs = add(
                            &add(
                                &self.mul(&e[x], &self.mul(&p(y, z), &e[t])),
                                &self.mul(&e[y], &self.mul(&p(z, x), &e[t])),
                            ),
                            &self.mul(&e[z], &self.mul(&p(x, y), &e[t])),
                        );
                        let rhs = add(
                            &add(
                                &self.mul(&p(x, y), &p(z, t)),
                                &self.mul(&p(y, z), &p(x, t)),
                            ),
                            &self.mul(&p(z, x), &p(y, t)),
                        );
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn check_anti_associative(&self) -> AntiAssociativityReport {
        self.inner.check_anti_associative()
    }

    pub fn anticommutator_algebra(&self) -> Algebra {
        self.inner.anticommutator_algebra()
    }

    pub fn is_jacobi_jordan_admissible(&self) -> bool {
        self.inner.is_jacobi_jordan_admissible()
    }

    /// `{x : x e_i = 0 for all i}`, the kernel of the stacked left
    /// multiplications.
    pub fn annihilator(&self) -> SubspaceBasis {
        let n = self.dim();
        let mut stacked = RatMatrix::zeros(0, n);
        for i in 0..n {
            stacked = stacked.vstack(&self.left_multiplication_basis(i));
        }
        nullspace(&stacked)
    }

    /// `J^1 ⊇ J^2 ⊇ ...` with left-normed powers, `J^{k+1} = J^k J`, ending
    /// at the first zero power.
    pub fn derived_powers(&self) -> Result<DerivedSeries, AlgebraError> {
        let n = self.dim();
        let mut powers = vec![SubspaceBasis::full(n)];
        loop {
            let current = powers.last().expect("nonempty");
            if current.is_zero() {
                return Ok(DerivedSeries { powers });
            }
            let mut products = Vec::new();
            for u in current.vectors() {
                for i in 0..n {
                    products.push(self.mul(&u, &unit(n, i)));
                }
            }
            let next = column_space(&RatMatrix::from_columns(n, &products)?);
            if next.dim() == current.dim() {
                return Err(AlgebraError::NonNilpotent { dim: next.dim() });
            }
            powers.push(next);
        }
    }

    /// Structure constants of the same product in the basis `u_i = P e_i`
    /// (the columns of `p`).
    pub fn transport(&self, p: &RatMatrix) -> Result<Algebra, AlgebraError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::BasisChangeShape { dim: n });
        }
        let inv = p.inverse()?.ok_or(AlgebraError::SingularMatrix)?;
        let cols = p.columns();
        let mut structure = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                let w = inv.mul_vec(&self.mul(&cols[i], &cols[j]));
                for (k, q) in w.into_iter().enumerate() {
                    structure[(i * n + j) * n + k] = q.clone();
                    structure[(j * n + i) * n + k] = q;
                }
            }
        }
        Ok(Algebra {
            inner: GeneralAlgebra {
                dim: n,
                basis_names: self.inner.basis_names.clone(),
                structure,
            },
        })
    }
}

/// A basis triple with the value of some trilinear expression on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleResidual {
    pub indices: [usize; 3],
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeViolation {
    /// Sorted basis indices of the failing monomial.
    pub monomial: [usize; 3],
    /// Coefficient of that monomial in `x(xx)`.
    pub coefficient: Vec<Rational>,
    pub witness: Vec<Rational>,
    pub value: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_commutative: bool,
    pub jacobi_violations: Vec<TripleResidual>,
    pub cube_violations: Vec<CubeViolation>,
}

impl ValidationReport {
    pub fn holds(&self) -> bool {
        self.is_commutative && self.jacobi_violations.is_empty() && self.cube_violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiAssociativityReport {
    pub violations: Vec<TripleResidual>,
}

impl AntiAssociativityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSeries {
    /// `powers[k]` is `J^{k+1}`; the last entry is the zero space.
    pub powers: Vec<SubspaceBasis>,
}

impl DerivedSeries {
    /// Least `k` with `J^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len()
    }

    /// `J^k` for `k >= 1`; zero past the end of the series.
    pub fn power(&self, k: usize) -> SubspaceBasis {
        assert!(k >= 1, "powers start at 1");
        match self.powers.get(k - 1) {
            Some(p) => p.clone(),
            None => SubspaceBasis::empty(self.powers[0].ambient_dim()),
        }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
