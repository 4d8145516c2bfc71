//! One-parameter formal deformations, checked order by order.
//!
//! An algebra deformation is `μ_t = μ_0 + t μ_1 + … + t^N μ_N` with each
//! `μ_i` a symmetric bilinear map, stored as an adjoint-valued 2-cochain.
//! A homomorphism deformation is `Φ_t = Φ_0 + t Φ_1 + …` into a
//! Jacobi-Jordan admissible target, compared against the anticommutator
//! bracket there.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{add, is_zero_vec, Algebra, AlgebraError, GeneralAlgebra};
use crate::cochain::{cohomology, is_coboundary, is_cocycle, Cochain, CochainError, SymmetryClass};
use crate::linalg::{RatMatrix, Rational};
use crate::representation::{Representation, RepresentationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformationError {
    #[error("term of order {order} is not a symmetric 2-cochain with values in the algebra")]
    BadTerm { order: usize },
    #[error("deformations are over different base algebras")]
    BaseMismatch,
    #[error("deformation has no first-order term")]
    NoFirstOrderTerm,
    #[error("map of order {order} is {rows}x{cols}, expected {m}x{n}")]
    HomShape {
        order: usize,
        rows: usize,
        cols: usize,
        m: usize,
        n: usize,
    },
    #[error("target algebra is not Jacobi-Jordan admissible")]
    TargetNotAdmissible,
    #[error("x.a = -{{phi(x), a}} is not a representation: fails at (e{}, e{})", .i + 1, .j + 1)]
    ActionNotRepresentation { i: usize, j: usize },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformationMode {
    /// Orders `0..=N`: the relations modulo `t^(N+1)`.
    Truncated,
    /// Orders `0..=2N`: `μ_t` as an honest polynomial product.
    Polynomial,
}

impl std::str::FromStr for DeformationMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "truncated" => Ok(DeformationMode::Truncated),
            "polynomial" => Ok(DeformationMode::Polynomial),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// The product of `a` as an adjoint-valued 2-cochain.
pub fn product_cochain(a: &Algebra) -> Cochain {
    let n = a.dim();
    let mut c = Cochain::zero(2, n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, q) in a.basis_product(i, j).iter().enumerate() {
                if !q.is_zero() {
                    c.set(&[i, j], k, q.clone()).expect("in range");
                }
            }
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: Algebra,
    terms: Vec<Cochain>,
}

impl TruncatedDeformation {
    /// `terms[i]` is `μ_{i+1}`.
    pub fn new(base: Algebra, terms: Vec<Cochain>) -> Result<Self, DeformationError> {
        let n = base.dim();
        for (i, t) in terms.iter().enumerate() {
            if t.degree() != 2 || t.algebra_dim() != n || t.module_dim() != n || !t.is_symmetric()
            {
                return Err(DeformationError::BadTerm { order: i + 1 });
            }
        }
        Ok(TruncatedDeformation { base, terms })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `μ_i`, with `μ_0` the base product and zero past the order.
    pub fn term(&self, i: usize) -> Cochain {
        let n = self.base.dim();
        match i {
            0 => product_cochain(&self.base),
            _ => self
                .terms
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| Cochain::zero(2, n, n)),
        }
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualEntry {
    pub order: usize,
    pub indices: Vec<usize>,
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub orders_checked: usize,
    pub entries: Vec<ResidualEntry>,
    /// For algebra deformations: the full residual of each failing order as
    /// a symmetric 3-cochain, so it can be tested for being a coboundary.
    pub obstructions: Vec<(usize, Cochain)>,
}

impl ResidualReport {
    pub fn verdict(&self) -> bool {
        self.entries.is_empty()
    }
}

fn apply(c: &Cochain, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    c.evaluate(&[x.to_vec(), y.to_vec()]).expect("degree 2")
}

/// `Σ_{i=0}^p Σ_cyc μ_i(x, μ_{p-i}(y, z))` on all basis triples, as a
/// 3-cochain.
pub fn order_residual(d: &TruncatedDeformation, p: usize) -> Cochain {
    let n = d.base.dim();
    let mus: Vec<Cochain> = (0..=p).map(|i| d.term(i)).collect();
    let mut out = Cochain::zero(3, n, n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut acc = vec![Rational::zero(); n];
                for i in 0..=p {
                    let (outer, inner) = (&mus[i], &mus[p - i]);
                    if outer.is_zero() || inner.is_zero() {
                        continue;
                    }
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        let bc = inner.value(&[b, c]);
                        let ea = unit(n, a);
                        acc = add(&acc, &apply(outer, &ea, &bc));
                    }
                }
                for (k, q) in acc.into_iter().enumerate() {
                    if !q.is_zero() {
                        out.set(&[x, y, z], k, q).expect("in range");
                    }
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn verify_deformation(d: &TruncatedDeformation, mode: DeformationMode) -> ResidualReport {
    let n = d.base.dim();
    let top = match mode {
        DeformationMode::Truncated => d.order(),
        DeformationMode::Polynomial => 2 * d.order(),
    };
    let mut entries = Vec::new();
    let mut obstructions = Vec::new();
    for p in 0..=top {
        let r = order_residual(d, p);
        if r.is_zero() {
            continue;
        }
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let v = r.value(&[x, y, z]);
                    if !is_zero_vec(&v) {
                        entries.push(ResidualEntry {
                            order: p,
                            indices: vec![x, y, z],
                            residual: v,
                        });
                    }
                }
            }
        }
        obstructions.push((p, r));
    }
    ResidualReport {
        orders_checked: top + 1,
        entries,
        obstructions,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalClass {
    pub is_cocycle: bool,
    /// Coordinates on the representatives of `H_s^2(J, J)`; `None` when
    /// `μ_1` is not a cocycle.
    pub class: Option<Vec<Rational>>,
    pub representatives: Vec<Cochain>,
}

impl InfinitesimalClass {
    pub fn is_trivial(&self) -> bool {
        self.class.as_ref().is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

pub fn infinitesimal_class(d: &TruncatedDeformation) -> Result<InfinitesimalClass, DeformationError> {
    if d.order() == 0 {
        return Err(DeformationError::NoFirstOrderTerm);
    }
    let n = d.base.dim();
    let r = Representation::adjoint(&d.base);
    let mu1 = d.term(1);
    let h = cohomology(&r, 2, SymmetryClass::Symmetric)?;
    let representatives = h
        .representatives
        .vectors()
        .into_iter()
        .map(|v| Cochain::new(2, n, n, v))
        .collect::<Result<_, _>>()?;
    let cocycle = is_cocycle(&r, &mu1)?;
    let class = if cocycle { h.class_of(mu1.coeffs())? } else { None };
    Ok(InfinitesimalClass {
        is_cocycle: cocycle,
        class,
        representatives,
    })
}

/// A linear `Φ_1` with `μ_1' - μ_1 = δ^1 Φ_1`, as an `n×n` matrix (column
/// `i` is `Φ_1(e_i)`), when the first-order terms are cohomologous.
pub fn equivalent_order1(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
) -> Result<Option<RatMatrix>, DeformationError> {
    if d1.base != d2.base {
        return Err(DeformationError::BaseMismatch);
    }
    let n = d1.base.dim();
    let r = Representation::adjoint(&d1.base);
    let diff = d2.term(1).sub(&d1.term(1))?;
    Ok(is_coboundary(&r, &diff)?.map(|f| linear_map_of(&f, n, n)))
}

/// Reads a 1-cochain as the matrix of the linear map it is.
pub fn linear_map_of(f: &Cochain, n: usize, m: usize) -> RatMatrix {
    RatMatrix::new(m, n, f.coeffs().to_vec()).expect("m·n entries")
}

/// A linear map as a 1-cochain.
pub fn cochain_of_linear_map(phi: &RatMatrix) -> Cochain {
    Cochain::new(1, phi.cols(), phi.rows(), phi.entries().to_vec()).expect("m·n entries")
}

/// The algebra with product `Σ t0^i μ_i`.
pub fn specialize(d: &TruncatedDeformation, t0: &Rational) -> Result<Algebra, DeformationError> {
    let n = d.base.dim();
    let mut total = d.term(0);
    let mut power = Rational::one();
    for t in &d.terms {
        power *= t0;
        total = total.add(&t.scale(&power))?;
    }
    let mut structure = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, q) in total.value(&[i, j]).into_iter().enumerate() {
                structure[(i * n + j) * n + k] = q;
            }
        }
    }
    Ok(Algebra::new(n, structure)?.with_names(d.base.basis_names().to_vec())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedHomDeformation {
    source: Algebra,
    target: GeneralAlgebra,
    /// `maps[k]` is `Φ_k`, an `m×n` matrix.
    maps: Vec<RatMatrix>,
}

impl TruncatedHomDeformation {
    pub fn new(
        source: Algebra,
        target: GeneralAlgebra,
        maps: Vec<RatMatrix>,
    ) -> Result<Self, DeformationError> {
        let (n, m) = (source.dim(), target.dim());
        for (order, phi) in maps.iter().enumerate() {
            if phi.rows() != m || phi.cols() != n {
                return Err(DeformationError::HomShape {
                    order,
                    rows: phi.rows(),
                    cols: phi.cols(),
                    m,
                    n,
                });
            }
        }
        Ok(TruncatedHomDeformation { source, target, maps })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &GeneralAlgebra {
        &self.target
    }

    /// Highest order present (`Φ_0` alone is order 0).
    pub fn order(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    pub fn map(&self, k: usize) -> RatMatrix {
        self.maps
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.target.dim(), self.source.dim()))
    }
}

/// Checks `Φ_n(xy) = Σ_k {Φ_k(x), Φ_{n-k}(y)}` for `n = 0..=N` on basis
/// pairs.
pub fn verify_hom_deformation(h: &TruncatedHomDeformation) -> Result<ResidualReport, DeformationError> {
    if !h.target.is_jacobi_jordan_admissible() {
        return Err(DeformationError::TargetNotAdmissible);
    }
    let bracket = h.target.anticommutator_algebra();
    let n = h.source.dim();
    let cols: Vec<Vec<Vec<Rational>>> = (0..=h.order()).map(|k| h.map(k).columns()).collect();
    let mut entries = Vec::new();
    for p in 0..=h.order() {
        let phi_p = h.map(p);
        for i in 0..n {
            for j in i..n {
                let mut r = phi_p.mul_vec(h.source.basis_product(i, j));
                for k in 0..=p {
                    let b = bracket.product(&cols[k][i], &cols[p - k][j]).expect("dims");
                    r = r.iter().zip(&b).map(|(x, y)| x - y).collect();
                }
                if !is_zero_vec(&r) {
                    entries.push(ResidualEntry {
                        order: p,
                        indices: vec![i, j],
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(ResidualReport {
        orders_checked: h.order() + 1,
        entries,
        obstructions: Vec::new(),
    })
}

/// `x·a = -{Φ_0(x), a}` on the target, if it is a representation.
pub fn hom_action(h: &TruncatedHomDeformation) -> Result<Representation, DeformationError> {
    let bracket = h.target.anticommutator_algebra();
    let phi0 = h.map(0);
    let action = phi0
        .columns()
        .iter()
        .map(|v| {
            bracket
                .left_multiplication(v)
                .map(|l| l.scale(&-Rational::one()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let r = Representation::new(h.source.clone(), h.target.dim(), action)?;
    if let Some(v) = r.check_representation().violations.first() {
        return Err(DeformationError::ActionNotRepresentation { i: v.i, j: v.j });
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    pub is_cocycle: bool,
    /// Coordinates on the `H^1(J, A)` representatives; `None` if `Φ_1` is
    /// not a cocycle.
    pub class: Option<Vec<Rational>>,
    pub dim_h1: usize,
}

impl HomClass {
    pub fn is_trivial(&self) -> bool {
        self.class.as_ref().is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

pub fn hom_infinitesimal_class(h: &TruncatedHomDeformation) -> Result<HomClass, DeformationError> {
    if !h.target.is_jacobi_jordan_admissible() {
        return Err(DeformationError::TargetNotAdmissible);
    }
    let r = hom_action(h)?;
    let phi1 = cochain_of_linear_map(&h.map(1));
    let h1 = cohomology(&r, 1, SymmetryClass::Full)?;
    let cocycle = is_cocycle(&r, &phi1)?;
    let class = if cocycle { h1.class_of(phi1.coeffs())? } else { None };
    Ok(HomClass {
        is_cocycle: cocycle,
        class,
        dim_h1: h1.dim_cohomology,
    })
}
