//! Representations `π : J -> End(M)` with the sign convention
//! `π(xy) = -π(x)π(y) - π(y)π(x)`, and the algebras built from them.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cochain::Cochain;
use crate::linalg::{nullspace, solve, LinalgError, RatMatrix, Rational, SubspaceBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("expected {expected} action matrices, found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("action matrix for e{} is {rows}x{cols}, expected {m}x{m}", .index + 1)]
    ActionShape {
        index: usize,
        rows: usize,
        cols: usize,
        m: usize,
    },
    #[error("representation identity fails at (e{}, e{})", .i + 1, .j + 1)]
    InvalidRepresentation { i: usize, j: usize },
    #[error("cochain must be a symmetric 2-cochain with values in the module")]
    BadExtensionCochain,
    #[error("representations act on different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: Algebra,
    module_dim: usize,
    action: Vec<RatMatrix>,
}

/// Residual `π(e_i e_j) + π(e_i)π(e_j) + π(e_j)π(e_i)` at a failing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationViolation {
    pub i: usize,
    pub j: usize,
    pub residual: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub violations: Vec<RepresentationViolation>,
}

impl RepresentationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Representation {
    /// Checks shapes only; whether the action is a representation is a
    /// separate question ([`Representation::check_representation`]).
    pub fn new(
        algebra: Algebra,
        module_dim: usize,
        action: Vec<RatMatrix>,
    ) -> Result<Self, RepresentationError> {
        let n = algebra.dim();
        if action.len() != n {
            return Err(RepresentationError::ActionCount {
                expected: n,
                found: action.len(),
            });
        }
        for (index, a) in action.iter().enumerate() {
            if a.rows() != module_dim || a.cols() != module_dim {
                return Err(RepresentationError::ActionShape {
                    index,
                    rows: a.rows(),
                    cols: a.cols(),
                    m: module_dim,
                });
            }
        }
        Ok(Representation {
            algebra,
            module_dim,
            action,
        })
    }

    /// `π(e_i) = L_{e_i}` on `M = J`.
    pub fn adjoint(a: &Algebra) -> Self {
        let action = (0..a.dim()).map(|i| a.left_multiplication_basis(i)).collect();
        Representation {
            algebra: a.clone(),
            module_dim: a.dim(),
            action,
        }
    }

    /// Zero action on an `m`-dimensional module.
    pub fn trivial(a: &Algebra, m: usize) -> Self {
        Representation {
            algebra: a.clone(),
            module_dim: m,
            action: vec![RatMatrix::zeros(m, m); a.dim()],
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn action(&self, i: usize) -> &RatMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[RatMatrix] {
        &self.action
    }

    /// `π(x)` for an arbitrary algebra element.
    pub fn action_of(&self, x: &[Rational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.module_dim, self.module_dim);
        for (xi, a) in x.iter().zip(&self.action) {
            if !xi.is_zero() {
                out = out.add(&a.scale(xi));
            }
        }
        out
    }

    pub fn check_representation(&self) -> RepresentationReport {
        let n = self.algebra.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                let lhs = self.action_of(self.algebra.basis_product(i, j));
                let anti = self.action[i]
                    .mul(&self.action[j])
                    .add(&self.action[j].mul(&self.action[i]));
                let residual = lhs.add(&anti);
                if !residual.is_zero() {
                    violations.push(RepresentationViolation { i, j, residual });
                }
            }
        }
        RepresentationReport { violations }
    }

    /// `C(M) = {v : π(x)v = 0 for all x}`.
    pub fn module_invariants(&self) -> SubspaceBasis {
        let mut stacked = RatMatrix::zeros(0, self.module_dim);
        for a in &self.action {
            stacked = stacked.vstack(a);
        }
        nullspace(&stacked)
    }

    /// Block-diagonal action on `M ⊕ M'`.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self, RepresentationError> {
        if self.algebra != other.algebra {
            return Err(RepresentationError::AlgebraMismatch);
        }
        let (m1, m2) = (self.module_dim, other.module_dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let top = a.hstack(&RatMatrix::zeros(m1, m2));
                let bottom = RatMatrix::zeros(m2, m1).hstack(b);
                top.vstack(&bottom)
            })
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            module_dim: m1 + m2,
            action,
        })
    }
}

/// Validity is required up front; see [`semidirect_product_unchecked`].
pub fn semidirect_product(
    r: &Representation,
    c: Option<&Cochain>,
) -> Result<Algebra, RepresentationError> {
    if let Some(v) = r.check_representation().violations.first() {
        return Err(RepresentationError::InvalidRepresentation { i: v.i, j: v.j });
    }
    semidirect_product_unchecked(r, c)
}

/// `J ⊕ M` with `(x+v)(y+w) = xy + π(x)w + π(y)v + c(x,y)`. The basis lists
/// the algebra first, then the module (named `m1, m2, …`). The action is not
/// checked, so an invalid one simply yields an algebra that fails
/// validation.
pub fn semidirect_product_unchecked(
    r: &Representation,
    c: Option<&Cochain>,
) -> Result<Algebra, RepresentationError> {
    let n = r.algebra.dim();
    let m = r.module_dim;
    if let Some(c) = c {
        if c.degree() != 2 || c.algebra_dim() != n || c.module_dim() != m || !c.is_symmetric() {
            return Err(RepresentationError::BadExtensionCochain);
        }
    }
    let d = n + m;
    let mut s = vec![Rational::zero(); d * d * d];
    let at = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for i in 0..n {
        for j in 0..n {
            for (k, q) in r.algebra.basis_product(i, j).iter().enumerate() {
                s[at(i, j, k)] = q.clone();
            }
            if let Some(c) = c {
                for (l, q) in c.value(&[i, j]).into_iter().enumerate() {
                    s[at(i, j, n + l)] = q;
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                let q = r.action[i].get(b, a);
                if !q.is_zero() {
                    s[at(i, n + a, n + b)] = q.clone();
                    s[at(n + a, i, n + b)] = q.clone();
                }
            }
        }
    }
    let names = r
        .algebra
        .basis_names()
        .iter()
        .cloned()
        .chain((1..=m).map(|k| format!("m{k}")))
        .collect();
    Ok(Algebra::new(d, s)?.with_names(names)?)
}

/// Searches for an equivalence `E_c -> E_c'` of extensions: a linear map
/// that is the identity on `M`, lifts the identity of `J`, and is an
/// algebra homomorphism. Such a map is `x + v ↦ x + f(x) + v`; returns its
/// full `(n+m)×(n+m)` matrix when one exists.
///
/// This works directly on the two product tables and does not use the
/// coboundary operator.
pub fn extensions_equivalent(
    r: &Representation,
    c: &Cochain,
    c_prime: &Cochain,
) -> Result<Option<RatMatrix>, RepresentationError> {
    let e = semidirect_product_unchecked(r, Some(c))?;
    let e2 = semidirect_product_unchecked(r, Some(c_prime))?;
    let n = r.algebra.dim();
    let m = r.module_dim;
    let d = n + m;
    // psi(f) = [[I_n, 0], [F, I_m]], affine in the m*n entries of F
    let psi = |f: &[Rational]| {
        let mut p = RatMatrix::identity(d);
        for l in 0..m {
            for i in 0..n {
                p.set(n + l, i, f[l * n + i].clone());
            }
        }
        p
    };
    // homomorphism defect psi(e_i)psi(e_j) - psi(e_i e_j), flattened over i, j
    let defect = |f: &[Rational]| -> Vec<Rational> {
        let p = psi(f);
        let cols = p.columns();
        let mut out = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let lhs = e2.product(&cols[i], &cols[j]).expect("dims");
                let rhs = p.mul_vec(e.basis_product(i, j));
                out.extend(lhs.iter().zip(&rhs).map(|(a, b)| a - b));
            }
        }
        out
    };
    let unknowns = m * n;
    let base = defect(&vec![Rational::zero(); unknowns]);
    // The F·F terms land in M·M = 0, so the defect is affine in F.
    let mut cols = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut f = vec![Rational::zero(); unknowns];
        f[u] = Rational::from_integer(1.into());
        let v = defect(&f);
        cols.push(v.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    let system = RatMatrix::from_columns(base.len(), &cols)?;
    let rhs: Vec<Rational> = base.iter().map(|x| -x.clone()).collect();
    Ok(solve(&system, &rhs)?.map(|f| psi(&f)))
}
