//! Derivations, antiderivations, invariant symmetric forms and the exact
//! sequence `0 → Der_a → Der → F → H_s^3` of a pseudo-Euclidean algebra.
//!
//! Endomorphisms are flattened row-major (`D[r][c]` at `r·n + c`), so all
//! the spaces here live in `Q^(n²)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::cochain::{cohomology, Cochain, CochainError, SymmetryClass};
use crate::linalg::{
    canonicalize, column_space, nullspace, sparse_nullspace, LinalgError, RatMatrix, Rational,
    SparseVec, SubspaceBasis,
};
use crate::representation::Representation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("matrix is {rows}x{cols}, expected {n}x{n}")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("form is not a symmetric invariant form of the algebra")]
    NotInvariant,
    #[error("map is not a derivation")]
    NotDerivation,
    #[error("map is not an antiderivation")]
    NotAntiderivation,
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `B[i][j] = B(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: RatMatrix,
}

impl BilinearForm {
    pub fn new(matrix: RatMatrix) -> Result<Self, StructureError> {
        if !matrix.is_square() {
            return Err(StructureError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                n: matrix.rows(),
            });
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm {
            matrix: RatMatrix::zeros(n, n),
        }
    }

    /// Reads a flattened `n×n` matrix (as stored in [`invariant_forms`]).
    pub fn from_flat(n: usize, v: &[Rational]) -> Result<Self, StructureError> {
        Ok(BilinearForm {
            matrix: RatMatrix::new(n, n, v.to_vec())?,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.matrix.entries().to_vec()
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let by = self.matrix.mul_vec(y);
        x.iter().zip(&by).map(|(a, b)| a * b).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// Basis triples with `B(e_i e_j, e_k) ≠ B(e_i, e_j e_k)`.
    pub fn invariance_violations(&self, a: &Algebra) -> Vec<[usize; 3]> {
        let n = a.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.matrix.column(k);
                    let lhs: Rational =
                        a.basis_product(i, j).iter().zip(&lhs).map(|(p, q)| p * q).sum();
                    let row = self.matrix.row(i);
                    let rhs: Rational =
                        a.basis_product(j, k).iter().zip(row).map(|(p, q)| p * q).sum();
                    if lhs != rhs {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoEuclideanReport {
    pub symmetric: bool,
    pub invariance_violations: Vec<[usize; 3]>,
    pub nondegenerate: bool,
}

impl PseudoEuclideanReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.invariance_violations.is_empty() && self.nondegenerate
    }
}

pub fn check_pseudo_euclidean(a: &Algebra, b: &BilinearForm) -> PseudoEuclideanReport {
    if b.dim() != a.dim() {
        return PseudoEuclideanReport {
            symmetric: b.is_symmetric(),
            invariance_violations: Vec::new(),
            nondegenerate: false,
        };
    }
    PseudoEuclideanReport {
        symmetric: b.is_symmetric(),
        invariance_violations: b.invariance_violations(a),
        nondegenerate: b.is_nondegenerate(),
    }
}

fn check_square(a: &Algebra, m: &RatMatrix) -> Result<(), StructureError> {
    let n = a.dim();
    if m.rows() != n || m.cols() != n {
        return Err(StructureError::Shape {
            rows: m.rows(),
            cols: m.cols(),
            n,
        });
    }
    Ok(())
}

fn flatten(m: &RatMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

fn unflatten_endo(n: usize, v: &[Rational]) -> RatMatrix {
    RatMatrix::new(n, n, v.to_vec()).expect("n² entries")
}

/// Rows of `D(e_i e_j) - s·(D(e_i) e_j + e_i D(e_j)) = 0` in the `n²`
/// unknowns of `D`; `s = 1` for derivations, `s = -1` for antiderivations.
fn endo_rows(a: &Algebra, s: i8) -> Vec<SparseVec> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row: SparseVec = Vec::new();
                for (t, c) in a.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row.push((k * n + t, c.clone()));
                    }
                }
                for t in 0..n {
                    let c = a.coeff(t, j, k);
                    if !c.is_zero() {
                        row.push((t * n + i, if s > 0 { -c.clone() } else { c.clone() }));
                    }
                    let c = a.coeff(i, t, k);
                    if !c.is_zero() {
                        row.push((t * n + j, if s > 0 { -c.clone() } else { c.clone() }));
                    }
                }
                rows.push(canonicalize(row));
            }
        }
    }
    rows
}

/// Rows making `B·D` symmetric (`skew = false`) or skew (`skew = true`).
fn b_symmetry_rows(b: &BilinearForm, skew: bool) -> Vec<SparseVec> {
    let n = b.dim();
    let bm = b.matrix();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && !skew {
                continue;
            }
            // (BD)[i][j] ∓ (BD)[j][i]
            let mut row: SparseVec = Vec::new();
            for s in 0..n {
                let x = bm.get(i, s);
                if !x.is_zero() {
                    row.push((s * n + j, x.clone()));
                }
                let y = bm.get(j, s);
                if !y.is_zero() {
                    row.push((s * n + i, if skew { y.clone() } else { -y.clone() }));
                }
            }
            rows.push(canonicalize(row));
        }
    }
    rows
}

pub fn derivations(a: &Algebra) -> SubspaceBasis {
    let n = a.dim();
    sparse_nullspace(n * n, endo_rows(a, 1))
}

pub fn antiderivations(a: &Algebra) -> SubspaceBasis {
    let n = a.dim();
    sparse_nullspace(n * n, endo_rows(a, -1))
}

/// Span of the left multiplications `L_{e_i}`.
pub fn inner_antiderivations(a: &Algebra) -> SubspaceBasis {
    let n = a.dim();
    let cols: Vec<Vec<Rational>> =
        (0..n).map(|i| flatten(&a.left_multiplication_basis(i))).collect();
    column_space(&RatMatrix::from_columns(n * n, &cols).expect("n² rows"))
}

pub fn is_derivation(a: &Algebra, d: &RatMatrix) -> bool {
    endo_residual_zero(a, d, 1)
}

pub fn is_antiderivation(a: &Algebra, d: &RatMatrix) -> bool {
    endo_residual_zero(a, d, -1)
}

fn endo_residual_zero(a: &Algebra, d: &RatMatrix, s: i8) -> bool {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let cols = d.columns();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(a.basis_product(i, j));
            let ei = unit(n, i);
            let ej = unit(n, j);
            let r1 = a.product(&cols[i], &ej).expect("dims");
            let r2 = a.product(&ei, &cols[j]).expect("dims");
            for k in 0..n {
                let rhs = &r1[k] + &r2[k];
                let ok = if s > 0 { lhs[k] == rhs } else { lhs[k] == -rhs };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureVerdict {
    /// `{D1, D2} = D1 D2 + D2 D1` is an antiderivation.
    pub closure: bool,
    /// `{D1, D2}(xy) = D1(x) D2(y) + D2(x) D1(y)` on all basis pairs.
    pub identity: bool,
}

pub fn anticommutator_closure_test(
    a: &Algebra,
    d1: &RatMatrix,
    d2: &RatMatrix,
) -> Result<ClosureVerdict, StructureError> {
    check_square(a, d1)?;
    check_square(a, d2)?;
    if !is_antiderivation(a, d1) || !is_antiderivation(a, d2) {
        return Err(StructureError::NotAntiderivation);
    }
    let e = d1.mul(d2).add(&d2.mul(d1));
    let closure = is_antiderivation(a, &e);
    let n = a.dim();
    let (c1, c2) = (d1.columns(), d2.columns());
    let mut identity = true;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = e.mul_vec(a.basis_product(i, j));
            let p = a.product(&c1[i], &c2[j]).expect("dims");
            let q = a.product(&c2[i], &c1[j]).expect("dims");
            if lhs.iter().zip(p.iter().zip(&q)).any(|(l, (x, y))| *l != x + y) {
                identity = false;
                break 'outer;
            }
        }
    }
    Ok(ClosureVerdict { closure, identity })
}

/// `F(J)`: symmetric `φ` with `φ(e_i e_j, e_k) = φ(e_i, e_j e_k)`, as
/// flattened `n×n` matrices.
pub fn invariant_forms(a: &Algebra) -> SubspaceBasis {
    let n = a.dim();
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rows.push(vec![(i * n + j, Rational::one()), (j * n + i, -Rational::one())]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row: SparseVec = Vec::new();
                for (t, c) in a.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row.push((t * n + k, c.clone()));
                    }
                }
                for (t, c) in a.basis_product(j, k).iter().enumerate() {
                    if !c.is_zero() {
                        row.push((i * n + t, -c.clone()));
                    }
                }
                let row = canonicalize(row);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    sparse_nullspace(n * n, rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpReport {
    pub dim_f: usize,
    pub b_p: usize,
    /// A nondegenerate element of `F(J)`, when one exists.
    pub witness: Option<BilinearForm>,
    /// Whether the answer could change over an algebraically closed field.
    /// Existence of a nondegenerate element is decided by a polynomial
    /// being nonzero, which does not depend on the (infinite) ground field,
    /// so this is always false; it is reported to make that explicit.
    pub may_differ_over_closure: bool,
}

/// `dim S(J)`, the span of the nondegenerate invariant forms: either all of
/// `F(J)` (nondegenerate forms are Zariski-open, so once one exists they
/// span) or 0.
///
/// Existence is decided by evaluating `det(Σ t_k F_k)` on the grid
/// `{1, …, n+1}^k`: the determinant has degree at most `n` in each `t_k`,
/// so if it vanishes on the whole grid it is identically zero.
pub fn b_p_dimension(a: &Algebra) -> BpReport {
    let n = a.dim();
    let f = invariant_forms(a);
    let k = f.dim();
    let mut report = BpReport {
        dim_f: k,
        b_p: 0,
        witness: None,
        may_differ_over_closure: false,
    };
    if n == 0 {
        report.b_p = k;
        return report;
    }
    if k == 0 {
        return report;
    }
    // every form kills the common radical; a nonzero one settles it at once
    let mut stacked = RatMatrix::zeros(0, n);
    for v in f.vectors() {
        stacked = stacked.vstack(&unflatten_endo(n, &v));
    }
    if !nullspace(&stacked).is_zero() {
        return report;
    }
    let basis: Vec<RatMatrix> = f.vectors().iter().map(|v| unflatten_endo(n, v)).collect();
    let mut point = vec![1i64; k];
    loop {
        let mut m = RatMatrix::zeros(n, n);
        for (t, b) in point.iter().zip(&basis) {
            m = m.add(&b.scale(&Rational::from_integer((*t).into())));
        }
        if m.rank() == n {
            report.b_p = k;
            report.witness = Some(BilinearForm { matrix: m });
            return report;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return report;
            }
            point[pos] += 1;
            if point[pos] <= n as i64 + 1 {
                break;
            }
            point[pos] = 1;
            pos += 1;
        }
    }
}

fn require_nondegenerate(a: &Algebra, b: &BilinearForm) -> Result<(), StructureError> {
    check_square(a, b.matrix())?;
    if !b.is_nondegenerate() {
        return Err(StructureError::DegenerateForm);
    }
    Ok(())
}

/// `(Der_s, Der_a)`: derivations that are `B`-symmetric, resp. `B`-skew.
pub fn symmetric_skew_derivations(
    a: &Algebra,
    b: &BilinearForm,
) -> Result<(SubspaceBasis, SubspaceBasis), StructureError> {
    require_nondegenerate(a, b)?;
    Ok(split_by_b(a, b, 1))
}

/// `(ADer_s, ADer_a)`: the same split for antiderivations.
pub fn symmetric_skew_antiderivations(
    a: &Algebra,
    b: &BilinearForm,
) -> Result<(SubspaceBasis, SubspaceBasis), StructureError> {
    require_nondegenerate(a, b)?;
    Ok(split_by_b(a, b, -1))
}

fn split_by_b(a: &Algebra, b: &BilinearForm, s: i8) -> (SubspaceBasis, SubspaceBasis) {
    let n = a.dim();
    let base = endo_rows(a, s);
    let mut sym = base.clone();
    sym.extend(b_symmetry_rows(b, false));
    let mut skew = base;
    skew.extend(b_symmetry_rows(b, true));
    (sparse_nullspace(n * n, sym), sparse_nullspace(n * n, skew))
}

/// The `B`-transpose `ᵗD = B⁻¹ Dᵀ B`, characterised by `B(Dx, y) = B(x, ᵗD y)`.
pub fn b_transpose(b: &BilinearForm, d: &RatMatrix) -> Result<RatMatrix, StructureError> {
    let inv = b
        .matrix()
        .inverse()?
        .ok_or(StructureError::DegenerateForm)?;
    Ok(inv.mul(&d.transpose()).mul(b.matrix()))
}

/// The endomorphism `h` with `c(x, y) = B(h(x), y)`, i.e. `h = B⁻¹ Cᵀ`.
pub fn endomorphism_of_form(b: &BilinearForm, c: &RatMatrix) -> Result<RatMatrix, StructureError> {
    let inv = b
        .matrix()
        .inverse()?
        .ok_or(StructureError::DegenerateForm)?;
    Ok(inv.mul(&c.transpose()))
}

/// `μ(φ)(x, y, z) = φ(xy, z)` as a scalar 3-cochain.
pub fn mu_map(a: &Algebra, phi: &BilinearForm) -> Result<Cochain, StructureError> {
    check_square(a, phi.matrix())?;
    if !phi.is_symmetric() || !phi.invariance_violations(a).is_empty() {
        return Err(StructureError::NotInvariant);
    }
    Ok(mu_unchecked(a, phi))
}

fn mu_unchecked(a: &Algebra, phi: &BilinearForm) -> Cochain {
    let n = a.dim();
    let mut coeffs = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let p = a.basis_product(i, j);
            for k in 0..n {
                coeffs.push(
                    p.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(t, c)| c * phi.matrix().get(t, k))
                        .sum(),
                );
            }
        }
    }
    Cochain::new(3, n, 1, coeffs).expect("n³ entries")
}

/// `ν(D)(x, y) = B(Dx, y) + B(x, Dy)`, matrix `DᵀB + BD`.
pub fn nu_map(a: &Algebra, b: &BilinearForm, d: &RatMatrix) -> Result<BilinearForm, StructureError> {
    check_square(a, d)?;
    require_nondegenerate(a, b)?;
    if !is_derivation(a, d) {
        return Err(StructureError::NotDerivation);
    }
    Ok(nu_unchecked(b, d))
}

fn nu_unchecked(b: &BilinearForm, d: &RatMatrix) -> BilinearForm {
    BilinearForm {
        matrix: d.transpose().mul(b.matrix()).add(&b.matrix().mul(d)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub dim_der: usize,
    pub dim_der_s: usize,
    pub dim_der_a: usize,
    pub dim_f: usize,
    pub dim_ker_nu: usize,
    pub dim_im_nu: usize,
    pub dim_ker_mu_bar: usize,
    pub dim_zs3: usize,
    pub dim_hs3: usize,
    /// `ker ν = Der_a` (exactness at `Der`).
    pub ker_nu_is_der_a: bool,
    /// `im ν = ker μ̄` (exactness at `F`).
    pub im_nu_is_ker_mu_bar: bool,
    /// Every `μ(φ)` for `φ` in a basis of `F` is a symmetric 3-cocycle.
    pub mu_lands_in_cocycles: bool,
    /// Every `ν(D)` for `D` in a basis of `Der` lies in `F`.
    pub nu_lands_in_f: bool,
}

impl ExactSequenceReport {
    pub fn exact(&self) -> bool {
        self.ker_nu_is_der_a && self.im_nu_is_ker_mu_bar
    }
}

pub fn exact_sequence_report(
    a: &Algebra,
    b: &BilinearForm,
) -> Result<ExactSequenceReport, StructureError> {
    require_nondegenerate(a, b)?;
    let n = a.dim();
    let der = derivations(a);
    let (der_s, der_a) = split_by_b(a, b, 1);
    let f = invariant_forms(a);

    // ν on the Der basis, in flattened form coordinates
    let nu_images: Vec<Vec<Rational>> = der
        .vectors()
        .iter()
        .map(|d| nu_unchecked(b, &unflatten_endo(n, d)).flat())
        .collect();
    let nu_matrix = RatMatrix::from_columns(n * n, &nu_images)?;
    let ker_nu_coords = nullspace(&nu_matrix);
    let ker_nu_vectors: Vec<Vec<Rational>> = ker_nu_coords
        .vectors()
        .iter()
        .map(|y| der.matrix().mul_vec(y))
        .collect();
    let ker_nu = SubspaceBasis::span(n * n, &ker_nu_vectors)?;
    let im_nu = column_space(&nu_matrix);
    let nu_lands_in_f = im_nu.is_subspace_of(&f)?;

    // μ̄: kernel of F → Z_s^3 → H_s^3, i.e. φ with μ(φ) ∈ B^3
    let trivial = Representation::trivial(a, 1);
    let h3 = cohomology(&trivial, 3, SymmetryClass::Symmetric)?;
    let mu_images: Vec<Vec<Rational>> = f
        .vectors()
        .iter()
        .map(|v| {
            let phi = BilinearForm::from_flat(n, v).expect("n² entries");
            mu_unchecked(a, &phi).into_coeffs()
        })
        .collect();
    let mu_span = SubspaceBasis::span(n * n * n, &mu_images)?;
    let mu_lands_in_cocycles = mu_span.is_subspace_of(&h3.cocycle_basis)?;
    let bnd = &h3.coboundary_basis;
    let system = RatMatrix::from_columns(n * n * n, &mu_images)?
        .hstack(&bnd.matrix().scale(&-Rational::one()));
    let kernel = nullspace(&system);
    let kf = f.dim();
    let ker_mu_vectors: Vec<Vec<Rational>> = kernel
        .vectors()
        .iter()
        .map(|y| f.matrix().mul_vec(&y[..kf]))
        .collect();
    let ker_mu_bar = SubspaceBasis::span(n * n, &ker_mu_vectors)?;

    Ok(ExactSequenceReport {
        dim_der: der.dim(),
        dim_der_s: der_s.dim(),
        dim_der_a: der_a.dim(),
        dim_f: f.dim(),
        dim_ker_nu: ker_nu.dim(),
        dim_im_nu: im_nu.dim(),
        dim_ker_mu_bar: ker_mu_bar.dim(),
        dim_zs3: h3.dim_cocycles,
        dim_hs3: h3.dim_cohomology,
        ker_nu_is_der_a: ker_nu.same_span(&der_a)?,
        im_nu_is_ker_mu_bar: im_nu.same_span(&ker_mu_bar)?,
        mu_lands_in_cocycles,
        nu_lands_in_f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub dim_der: usize,
    pub dim_ader: usize,
    pub dim_iader: usize,
    pub dim_ader_s: usize,
    pub dim_der_s: usize,
    pub dim_der_a: usize,
    pub dim_f: usize,
    pub b_p: usize,
    pub dim_hs3: usize,
    pub dim_annihilator: usize,
    /// `1 + m(m+1)/2` with `m = dim Ann(J)`.
    pub bound_low: usize,
    /// `Δ − Δ_a + dim H_s^3`.
    pub bound_high: usize,
    pub may_differ_over_closure: bool,
}

impl StructureReport {
    pub fn bounds_hold(&self) -> bool {
        self.b_p <= self.dim_f && self.bound_low <= self.dim_f && self.dim_f <= self.bound_high
    }
}

pub fn structure_report(a: &Algebra, b: &BilinearForm) -> Result<StructureReport, StructureError> {
    let ex = exact_sequence_report(a, b)?;
    let bp = b_p_dimension(a);
    let (ader_s, _) = split_by_b(a, b, -1);
    let m = a.annihilator().dim();
    Ok(StructureReport {
        dim_der: ex.dim_der,
        dim_ader: antiderivations(a).dim(),
        dim_iader: inner_antiderivations(a).dim(),
        dim_ader_s: ader_s.dim(),
        dim_der_s: ex.dim_der_s,
        dim_der_a: ex.dim_der_a,
        dim_f: ex.dim_f,
        b_p: bp.b_p,
        dim_hs3: ex.dim_hs3,
        dim_annihilator: m,
        bound_low: 1 + m * (m + 1) / 2,
        bound_high: ex.dim_der - ex.dim_der_a + ex.dim_hs3,
        may_differ_over_closure: bp.may_differ_over_closure,
    })
}
