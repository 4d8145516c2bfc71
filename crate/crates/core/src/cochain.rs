//! Cochains `J^p -> M`, the two operator families `d` and `δ`, and the
//! zigzag cohomology built from them: cocycles are `ker d^p`, coboundaries
//! are `im δ^{p-1}` with `δ` fed only skew cochains.
//!
//! Coordinates: a `p`-cochain is a flat vector of length `m·n^p`; the entry
//! for module slot `k` and arguments `(i1, …, ip)` sits at
//! `k·n^p + rowmajor(i1, …, ip)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{
    canonicalize, independent_subsequence, normalize_leading, solve, sparse_nullspace,
    LinalgError, RatMatrix, Rational, SparseEchelon, SparseVec, SubspaceBasis,
};
use crate::representation::Representation;

/// Hard limit on the cochain degree. Sizes grow as `m·n^p`.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain has {found} coefficients, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("cochain is {found_n}x{found_m} (algebra x module), representation is {n}x{m}")]
    RepresentationMismatch {
        n: usize,
        m: usize,
        found_n: usize,
        found_m: usize,
    },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {degree} exceeds the limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("there is no coboundary operator into degree 0")]
    NoCoboundaryInDegreeZero,
    #[error("argument list has {found} entries for a degree {degree} cochain")]
    Arity { degree: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Full,
    Symmetric,
    Skew,
}

impl SymmetryClass {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Full => "full",
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::Skew => "skew",
        }
    }
}

impl std::str::FromStr for SymmetryClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(SymmetryClass::Full),
            "symmetric" => Ok(SymmetryClass::Symmetric),
            "skew" => Ok(SymmetryClass::Skew),
            other => Err(format!("unknown symmetry class {other:?}")),
        }
    }
}

/// All `p`-tuples over `0..n` in row-major order.
pub fn multi_indices(n: usize, p: usize) -> Vec<Vec<usize>> {
    let total = n.pow(p as u32);
    (0..total).map(|f| unflatten(n, p, f)).collect()
}

pub fn flat_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn unflatten(n: usize, p: usize, mut f: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for slot in out.iter_mut().rev() {
        *slot = f % n;
        f /= n;
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Sign of the permutation sorting `args`, or 0 when an index repeats.
fn sort_sign(args: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..args.len() {
        for j in i + 1..args.len() {
            if args[i] == args[j] {
                return 0;
            }
            if args[i] > args[j] {
                sign = -sign;
            }
        }
    }
    sign
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    algebra_dim: usize,
    module_dim: usize,
    coeffs: Vec<Rational>,
}

impl Cochain {
    pub fn new(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        coeffs: Vec<Rational>,
    ) -> Result<Self, CochainError> {
        let expected = module_dim * algebra_dim.pow(degree as u32);
        if coeffs.len() != expected {
            return Err(CochainError::Shape {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Cochain {
            degree,
            algebra_dim,
            module_dim,
            coeffs,
        })
    }

    pub fn zero(degree: usize, algebra_dim: usize, module_dim: usize) -> Self {
        Cochain {
            degree,
            algebra_dim,
            module_dim,
            coeffs: vec![Rational::zero(); module_dim * algebra_dim.pow(degree as u32)],
        }
    }

    /// Sets `c(e_args)_k = q` for each `(args, k, q)`, literally: no
    /// symmetrisation.
    pub fn from_entries(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        entries: &[(Vec<usize>, usize, Rational)],
    ) -> Result<Self, CochainError> {
        let mut c = Self::zero(degree, algebra_dim, module_dim);
        for (args, k, q) in entries {
            c.set(args, *k, q.clone())?;
        }
        Ok(c)
    }

    /// Like [`Cochain::from_entries`] but writes every permutation of the
    /// arguments, producing a symmetric cochain.
    pub fn symmetric_from_entries(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        entries: &[(Vec<usize>, usize, Rational)],
    ) -> Result<Self, CochainError> {
        let mut c = Self::zero(degree, algebra_dim, module_dim);
        for (args, k, q) in entries {
            for perm in distinct_permutations(args) {
                c.set(&perm, *k, q.clone())?;
            }
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn index(&self, args: &[usize], k: usize) -> Result<usize, CochainError> {
        if args.len() != self.degree {
            return Err(CochainError::Arity {
                degree: self.degree,
                found: args.len(),
            });
        }
        for &i in args {
            if i >= self.algebra_dim {
                return Err(CochainError::IndexOutOfRange {
                    index: i,
                    dim: self.algebra_dim,
                });
            }
        }
        if k >= self.module_dim {
            return Err(CochainError::IndexOutOfRange {
                index: k,
                dim: self.module_dim,
            });
        }
        Ok(self.index_unchecked(args, k))
    }

    fn index_unchecked(&self, args: &[usize], k: usize) -> usize {
        k * self.algebra_dim.pow(self.degree as u32) + flat_index(self.algebra_dim, args)
    }

    pub fn get(&self, args: &[usize], k: usize) -> Result<&Rational, CochainError> {
        Ok(&self.coeffs[self.index(args, k)?])
    }

    pub fn set(&mut self, args: &[usize], k: usize, q: Rational) -> Result<(), CochainError> {
        let i = self.index(args, k)?;
        self.coeffs[i] = q;
        Ok(())
    }

    /// `c(e_args)` as a module vector.
    pub fn value(&self, args: &[usize]) -> Vec<Rational> {
        let f = flat_index(self.algebra_dim, args);
        let stride = self.algebra_dim.pow(self.degree as u32);
        (0..self.module_dim)
            .map(|k| self.coeffs[k * stride + f].clone())
            .collect()
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, args: &[Vec<Rational>]) -> Result<Vec<Rational>, CochainError> {
        if args.len() != self.degree {
            return Err(CochainError::Arity {
                degree: self.degree,
                found: args.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.module_dim];
        for idx in multi_indices(self.algebra_dim, self.degree) {
            let mut w = Rational::one();
            for (a, &i) in args.iter().zip(&idx) {
                w *= &a[i];
                if w.is_zero() {
                    break;
                }
            }
            if w.is_zero() {
                continue;
            }
            for (k, v) in self.value(&idx).into_iter().enumerate() {
                if !v.is_zero() {
                    out[k] += &w * v;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.algebra_dim;
        multi_indices(n, self.degree).iter().all(|idx| {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            self.value(idx) == self.value(&sorted)
        })
    }

    pub fn is_skew(&self) -> bool {
        let n = self.algebra_dim;
        multi_indices(n, self.degree).iter().all(|idx| {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            let s = sort_sign(idx);
            let v = self.value(idx);
            if s == 0 {
                v.iter().all(Zero::is_zero)
            } else {
                let w = self.value(&sorted);
                v.iter()
                    .zip(&w)
                    .all(|(a, b)| if s > 0 { a == b } else { *a == -b.clone() })
            }
        })
    }

    fn same_shape(&self, other: &Cochain) -> Result<(), CochainError> {
        if self.degree != other.degree {
            return Err(CochainError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if (self.algebra_dim, self.module_dim) != (other.algebra_dim, other.module_dim) {
            return Err(CochainError::RepresentationMismatch {
                n: self.algebra_dim,
                m: self.module_dim,
                found_n: other.algebra_dim,
                found_m: other.module_dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cochain { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cochain { coeffs, ..self.clone() })
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        let coeffs = self.coeffs.iter().map(|a| a * s).collect();
        Cochain { coeffs, ..self.clone() }
    }

    /// Average over argument permutations: `(1/p!) Σ_σ c∘σ`.
    pub fn symmetric_part(&self) -> Cochain {
        self.projection(false)
    }

    /// `(1/p!) Σ_σ sign(σ) c∘σ`.
    pub fn skew_part(&self) -> Cochain {
        self.projection(true)
    }

    fn projection(&self, signed: bool) -> Cochain {
        let n = self.algebra_dim;
        let p = self.degree;
        let perms = all_permutations(p);
        let fact = Rational::from_integer((perms.len() as i64).into());
        let mut out = Cochain::zero(p, n, self.module_dim);
        for idx in multi_indices(n, p) {
            let mut acc = vec![Rational::zero(); self.module_dim];
            for (perm, sign) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&s| idx[s]).collect();
                for (a, v) in acc.iter_mut().zip(self.value(&permuted)) {
                    if signed && *sign < 0 {
                        *a -= v;
                    } else {
                        *a += v;
                    }
                }
            }
            for (k, a) in acc.into_iter().enumerate() {
                let i = out.index_unchecked(&idx, k);
                out.coeffs[i] = a / &fact;
            }
        }
        out
    }

    /// Reinterprets a flat vector of a subspace basis as a cochain.
    pub fn from_vector(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        v: Vec<Rational>,
    ) -> Result<Self, CochainError> {
        Self::new(degree, algebra_dim, module_dim, v)
    }

    /// Nonzero entries as `(arguments, module slot, value)`, in flat order.
    pub fn support(&self) -> Vec<(Vec<usize>, usize, Rational)> {
        let n = self.algebra_dim;
        let stride = n.pow(self.degree as u32);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(f, q)| {
                (
                    unflatten(n, self.degree, f % stride.max(1)),
                    f / stride.max(1),
                    q.clone(),
                )
            })
            .collect()
    }
}

fn all_permutations(p: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    heap_permutations(p, &mut cur, &mut out);
    out.into_iter()
        .map(|perm| {
            let s = sort_sign(&perm);
            (perm, s)
        })
        .collect()
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// Distinct rearrangements of `args`, in lexicographic order.
pub fn distinct_permutations(args: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = args.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation over a multiset
    loop {
        let p = cur.len();
        let Some(i) = (1..p).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..p).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

fn nondecreasing(n: usize, p: usize) -> Vec<Vec<usize>> {
    multi_indices(n, p)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

fn increasing(n: usize, p: usize) -> Vec<Vec<usize>> {
    multi_indices(n, p)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// Position of each flat `L^p` coordinate inside a symmetric or skew basis,
/// with the coefficient it carries there.
struct CoordMap {
    dim: usize,
    target: Vec<Option<(usize, i8)>>,
}

impl CoordMap {
    fn new(n: usize, p: usize, m: usize, class: SymmetryClass) -> CoordMap {
        let stride = n.pow(p as u32);
        match class {
            SymmetryClass::Full => CoordMap {
                dim: m * stride,
                target: (0..m * stride).map(|i| Some((i, 1))).collect(),
            },
            SymmetryClass::Symmetric | SymmetryClass::Skew => {
                let reps = if class == SymmetryClass::Symmetric {
                    nondecreasing(n, p)
                } else {
                    increasing(n, p)
                };
                let mut rank_of = vec![usize::MAX; stride];
                for (r, idx) in reps.iter().enumerate() {
                    rank_of[flat_index(n, idx)] = r;
                }
                let mut target = vec![None; m * stride];
                for (f, idx) in multi_indices(n, p).into_iter().enumerate() {
                    let mut sorted = idx.clone();
                    sorted.sort_unstable();
                    let r = rank_of[flat_index(n, &sorted)];
                    let sign = if class == SymmetryClass::Symmetric {
                        1
                    } else {
                        sort_sign(&idx)
                    };
                    if r == usize::MAX || sign == 0 {
                        continue;
                    }
                    for k in 0..m {
                        target[k * stride + f] = Some((k * reps.len() + r, sign));
                    }
                }
                CoordMap {
                    dim: m * reps.len(),
                    target,
                }
            }
        }
    }

    /// Row vector times the embedding matrix.
    fn pull_back(&self, row: &SparseVec) -> SparseVec {
        canonicalize(
            row.iter()
                .filter_map(|(c, x)| {
                    self.target[*c].map(|(t, s)| (t, if s < 0 { -x.clone() } else { x.clone() }))
                })
                .collect(),
        )
    }

    fn basis(&self, ambient: usize) -> SubspaceBasis {
        let mut m = RatMatrix::zeros(ambient, self.dim);
        for (f, t) in self.target.iter().enumerate() {
            if let Some((c, s)) = t {
                m.set(f, *c, Rational::from_integer((*s as i64).into()));
            }
        }
        SubspaceBasis::from_matrix_unchecked(m)
    }

    /// Embeds class coordinates as a flat `L^p` vector.
    fn embed(&self, v: &[Rational]) -> Vec<Rational> {
        self.target
            .iter()
            .map(|t| match t {
                Some((c, s)) if *s > 0 => v[*c].clone(),
                Some((c, _)) => -v[*c].clone(),
                None => Rational::zero(),
            })
            .collect()
    }
}

/// Embedded basis of the symmetric `p`-cochains: one vector per module slot
/// and non-decreasing multi-index, with a 1 at every rearrangement.
pub fn symmetric_basis(n: usize, p: usize, m: usize) -> SubspaceBasis {
    CoordMap::new(n, p, m, SymmetryClass::Symmetric).basis(m * n.pow(p as u32))
}

/// Embedded basis of the skew `p`-cochains: one vector per module slot and
/// strictly increasing multi-index, signed by the sorting permutation.
pub fn skew_basis(n: usize, p: usize, m: usize) -> SubspaceBasis {
    CoordMap::new(n, p, m, SymmetryClass::Skew).basis(m * n.pow(p as u32))
}

pub fn symmetric_dim(n: usize, p: usize, m: usize) -> usize {
    m * binomial(n + p - 1, p)
}

pub fn skew_dim(n: usize, p: usize, m: usize) -> usize {
    m * binomial(n, p)
}

/// Sparse rows of `d^p` (`sign = 1`) or of the full `δ^p` formula
/// (`sign = -1`), row order matching the flat `L^{p+1}` coordinates.
fn operator_rows(r: &Representation, p: usize, sign: i8) -> impl Iterator<Item = SparseVec> + '_ {
    let n = r.algebra().dim();
    let m = r.module_dim();
    let src_stride = n.pow(p as u32);
    let dst = multi_indices(n, p + 1);
    (0..m).flat_map(move |l| {
        let dst = dst.clone();
        dst.into_iter().map(move |args| {
            let mut row: SparseVec = Vec::new();
            // Σ_i π(x_i) c(…x̂_i…)
            for i in 0..=p {
                let rest: Vec<usize> =
                    args.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &a)| a).collect();
                let f = flat_index(n, &rest);
                let pi = r.action(args[i]);
                for k in 0..m {
                    let x = pi.get(l, k);
                    if !x.is_zero() {
                        row.push((k * src_stride + f, x.clone()));
                    }
                }
            }
            // ± Σ_{i<j} c(x_i x_j, …x̂_i…x̂_j…)
            for i in 0..=p {
                for j in i + 1..=p {
                    let prod = r.algebra().basis_product(args[i], args[j]);
                    let rest: Vec<usize> = args
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i && t != j)
                        .map(|(_, &a)| a)
                        .collect();
                    for (t, x) in prod.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let mut full = Vec::with_capacity(p);
                        full.push(t);
                        full.extend_from_slice(&rest);
                        let v = if sign < 0 { -x.clone() } else { x.clone() };
                        row.push((l * src_stride + flat_index(n, &full), v));
                    }
                }
            }
            canonicalize(row)
        })
    })
}

fn dense_from_rows<I: Iterator<Item = SparseVec>>(rows: usize, cols: usize, it: I) -> RatMatrix {
    let mut out = RatMatrix::zeros(rows, cols);
    for (r, row) in it.enumerate() {
        for (c, x) in row {
            out.set(r, c, x);
        }
    }
    out
}

/// Matrix of `d^p : L^p -> L^{p+1}` in flat coordinates.
pub fn d_matrix(r: &Representation, p: usize) -> RatMatrix {
    let n = r.algebra().dim();
    let m = r.module_dim();
    dense_from_rows(
        m * n.pow(p as u32 + 1),
        m * n.pow(p as u32),
        operator_rows(r, p, 1),
    )
}

/// Matrix of `δ^p` restricted to skew cochains: columns are indexed by the
/// [`skew_basis`] coordinates, rows by flat `L^{p+1}` coordinates.
pub fn delta_matrix(r: &Representation, p: usize) -> RatMatrix {
    let n = r.algebra().dim();
    let m = r.module_dim();
    let map = CoordMap::new(n, p, m, SymmetryClass::Skew);
    dense_from_rows(
        m * n.pow(p as u32 + 1),
        map.dim,
        operator_rows(r, p, -1).map(|row| map.pull_back(&row)),
    )
}

fn check_compatible(r: &Representation, c: &Cochain) -> Result<(), CochainError> {
    let (n, m) = (r.algebra().dim(), r.module_dim());
    if c.algebra_dim != n || c.module_dim != m {
        return Err(CochainError::RepresentationMismatch {
            n,
            m,
            found_n: c.algebra_dim,
            found_m: c.module_dim,
        });
    }
    Ok(())
}

fn apply_operator(r: &Representation, c: &Cochain, sign: i8) -> Result<Cochain, CochainError> {
    check_compatible(r, c)?;
    let n = r.algebra().dim();
    let m = r.module_dim();
    let coeffs = operator_rows(r, c.degree, sign)
        .map(|row| {
            row.iter()
                .filter(|(col, _)| !c.coeffs[*col].is_zero())
                .map(|(col, x)| x * &c.coeffs[*col])
                .sum()
        })
        .collect();
    Cochain::new(c.degree + 1, n, m, coeffs)
}

/// `d^p c`.
pub fn apply_d(r: &Representation, c: &Cochain) -> Result<Cochain, CochainError> {
    apply_operator(r, c, 1)
}

/// The `δ^p` formula applied to `c` (meaningful as a coboundary only for
/// skew `c`).
pub fn apply_delta(r: &Representation, c: &Cochain) -> Result<Cochain, CochainError> {
    apply_operator(r, c, -1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub class: SymmetryClass,
    pub dim_cocycles: usize,
    /// Dimension of the coboundaries actually quotiented out: `B^p` for the
    /// full class, `B^p ∩ S^p` for the symmetric class, 0 for skew.
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// `dim im δ^{p-1}` without any symmetry restriction.
    pub dim_full_coboundaries: usize,
    pub cocycle_basis: SubspaceBasis,
    pub coboundary_basis: SubspaceBasis,
    pub representatives: SubspaceBasis,
}

fn check_degree(p: usize) -> Result<(), CochainError> {
    if p > MAX_DEGREE {
        return Err(CochainError::DegreeTooLarge {
            degree: p,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// `ker d^p ∩ class`, embedded in flat coordinates.
pub fn cocycles(
    r: &Representation,
    p: usize,
    class: SymmetryClass,
) -> Result<SubspaceBasis, CochainError> {
    check_degree(p)?;
    let n = r.algebra().dim();
    let m = r.module_dim();
    let map = CoordMap::new(n, p, m, class);
    let kernel = sparse_nullspace(map.dim, operator_rows(r, p, 1).map(|row| map.pull_back(&row)));
    if class == SymmetryClass::Full {
        return Ok(kernel);
    }
    let ambient = m * n.pow(p as u32);
    let vs: Vec<Vec<Rational>> = kernel.vectors().iter().map(|v| map.embed(v)).collect();
    Ok(SubspaceBasis::from_matrix_unchecked(RatMatrix::from_columns(ambient, &vs)?))
}

/// Images `δ^{p-1}(a)` of the skew basis cochains, reduced to a basis of
/// `B^p`.
pub fn coboundaries(r: &Representation, p: usize) -> Result<SubspaceBasis, CochainError> {
    check_degree(p)?;
    let n = r.algebra().dim();
    let m = r.module_dim();
    let ambient = m * n.pow(p as u32);
    if p == 0 {
        return Ok(SubspaceBasis::empty(ambient));
    }
    let images = delta_images(r, p - 1);
    let keep = independent_subsequence(ambient, &images);
    let cols: Vec<Vec<Rational>> = keep.into_iter().map(|i| images[i].clone()).collect();
    Ok(SubspaceBasis::from_matrix_unchecked(RatMatrix::from_columns(ambient, &cols)?))
}

/// Columns of [`delta_matrix`] as flat vectors.
fn delta_images(r: &Representation, q: usize) -> Vec<Vec<Rational>> {
    delta_matrix(r, q).columns()
}

/// `span(b) ∩ S^p`: combinations of the `b` vectors invariant under every
/// argument swap.
fn symmetric_part_of_span(b: &SubspaceBasis, n: usize, p: usize, m: usize) -> SubspaceBasis {
    let ambient = b.ambient_dim();
    if b.is_zero() {
        return SubspaceBasis::empty(ambient);
    }
    let stride = n.pow(p as u32);
    let vs = b.vectors();
    let mut rows = Vec::new();
    for (f, idx) in multi_indices(n, p).into_iter().enumerate() {
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        let g = flat_index(n, &sorted);
        if g == f {
            continue;
        }
        for k in 0..m {
            let row: SparseVec = vs
                .iter()
                .enumerate()
                .map(|(i, v)| (i, &v[k * stride + f] - &v[k * stride + g]))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    let kernel = sparse_nullspace(vs.len(), rows);
    let combos: Vec<Vec<Rational>> = kernel
        .vectors()
        .iter()
        .map(|y| b.matrix().mul_vec(y))
        .collect();
    SubspaceBasis::from_matrix_unchecked(
        RatMatrix::from_columns(ambient, &combos).expect("shape"),
    )
}

/// Zigzag cohomology in degree `p`.
///
/// * `Full`: `Z = ker d^p`, `B = im δ^{p-1}`.
/// * `Symmetric`: `Z ∩ S^p` modulo `B ∩ S^p`.
/// * `Skew`: `Z ∩ A^p`, nothing quotiented.
pub fn cohomology(
    r: &Representation,
    p: usize,
    class: SymmetryClass,
) -> Result<CohomologyResult, CochainError> {
    check_degree(p)?;
    let n = r.algebra().dim();
    let m = r.module_dim();
    let z = cocycles(r, p, class)?;
    let b_full = coboundaries(r, p)?;
    let b = match class {
        SymmetryClass::Full => b_full.clone(),
        SymmetryClass::Symmetric => symmetric_part_of_span(&b_full, n, p, m),
        SymmetryClass::Skew => SubspaceBasis::empty(b_full.ambient_dim()),
    };
    let mut echelon = SparseEchelon::new(z.ambient_dim());
    for v in b.vectors() {
        echelon.insert_dense(&v);
    }
    let mut reps = Vec::new();
    for mut v in z.vectors() {
        if echelon.insert_dense(&v) {
            normalize_leading(&mut v);
            reps.push(v);
        }
    }
    let representatives =
        SubspaceBasis::from_matrix_unchecked(RatMatrix::from_columns(z.ambient_dim(), &reps)?);
    // B ⊆ Z is a theorem; a violation here would make the quotient meaningless
    debug_assert_eq!(echelon.rank(), z.dim(), "coboundaries escaped the cocycles");
    Ok(CohomologyResult {
        degree: p,
        class,
        dim_cocycles: z.dim(),
        dim_coboundaries: b.dim(),
        dim_cohomology: representatives.dim(),
        dim_full_coboundaries: b_full.dim(),
        cocycle_basis: z,
        coboundary_basis: b,
        representatives,
    })
}

impl CohomologyResult {
    /// Coordinates of the class of `v` on [`CohomologyResult::representatives`],
    /// or `None` when `v` is not a cocycle of this class.
    pub fn class_of(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, CochainError> {
        if v.len() != self.cocycle_basis.ambient_dim() {
            return Err(CochainError::Shape {
                expected: self.cocycle_basis.ambient_dim(),
                found: v.len(),
            });
        }
        let system = self.coboundary_basis.matrix().hstack(self.representatives.matrix());
        let Some(y) = solve(&system, v)? else {
            return Ok(None);
        };
        Ok(Some(y[self.coboundary_basis.dim()..].to_vec()))
    }
}

pub fn is_cocycle(r: &Representation, c: &Cochain) -> Result<bool, CochainError> {
    Ok(apply_d(r, c)?.is_zero())
}

/// A skew `(p-1)`-cochain `f` with `δ^{p-1} f = c`, if one exists. Free
/// variables of the linear system are set to zero.
pub fn is_coboundary(r: &Representation, c: &Cochain) -> Result<Option<Cochain>, CochainError> {
    check_compatible(r, c)?;
    let p = c.degree;
    if p == 0 {
        return Err(CochainError::NoCoboundaryInDegreeZero);
    }
    check_degree(p)?;
    let n = r.algebra().dim();
    let m = r.module_dim();
    let delta = delta_matrix(r, p - 1);
    let Some(y) = solve(&delta, &c.coeffs)? else {
        return Ok(None);
    };
    let map = CoordMap::new(n, p - 1, m, SymmetryClass::Skew);
    Ok(Some(Cochain::new(p - 1, n, m, map.embed(&y))?))
}

/// Whether `c1 - c2 ∈ B^p`. In degree 0 there are no coboundaries, so this
/// is plain equality.
pub fn cohomologous(r: &Representation, c1: &Cochain, c2: &Cochain) -> Result<bool, CochainError> {
    let diff = c1.sub(c2)?;
    if diff.degree == 0 {
        check_compatible(r, &diff)?;
        return Ok(diff.is_zero());
    }
    Ok(is_coboundary(r, &diff)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::standard::j4;

    fn e(i: usize) -> usize {
        i - 1
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(symmetric_basis(4, 2, 1).dim(), 10);
        assert_eq!(skew_basis(4, 2, 1).dim(), 6);
        assert_eq!(symmetric_basis(4, 1, 3).dim(), 12);
        assert_eq!(skew_basis(4, 1, 3).dim(), 12);
        assert_eq!(symmetric_basis(3, 0, 2).dim(), 2);
        assert_eq!(skew_basis(3, 4, 1).dim(), 0);
        assert_eq!(symmetric_basis(4, 3, 2).dim(), symmetric_dim(4, 3, 2));
        assert_eq!(skew_basis(5, 3, 2).dim(), skew_dim(5, 3, 2));
    }

    #[test]
    fn basis_vectors_have_the_right_symmetry() {
        for v in symmetric_basis(3, 3, 2).vectors() {
            assert!(Cochain::new(3, 3, 2, v).unwrap().is_symmetric());
        }
        for v in skew_basis(4, 3, 2).vectors() {
            let c = Cochain::new(3, 4, 2, v).unwrap();
            assert!(c.is_skew());
            assert!(!c.is_zero());
        }
    }

    #[test]
    fn projections_split_two_cochains() {
        let c = Cochain::from_entries(
            2,
            3,
            1,
            &[(vec![0, 1], 0, int(3)), (vec![1, 0], 0, int(1)), (vec![2, 2], 0, rat(1, 2))],
        )
        .unwrap();
        let s = c.symmetric_part();
        let a = c.skew_part();
        assert!(s.is_symmetric());
        assert!(a.is_skew());
        assert_eq!(s.add(&a).unwrap(), c);
        assert_eq!(s.get(&[0, 1], 0).unwrap(), &int(2));
        assert_eq!(a.get(&[1, 0], 0).unwrap(), &int(-1));
    }

    #[test]
    fn evaluation_is_multilinear() {
        let c = Cochain::from_entries(2, 2, 1, &[(vec![0, 1], 0, int(2))]).unwrap();
        let x = vec![int(3), int(1)];
        let y = vec![int(1), int(5)];
        // 3*5*2
        assert_eq!(c.evaluate(&[x, y]).unwrap(), vec![int(30)]);
    }

    #[test]
    fn d_zero_on_trivial_module_vanishes() {
        let r = Representation::trivial(&j4(), 1);
        assert!(d_matrix(&r, 0).is_zero());
        assert_eq!(delta_matrix(&r, 0), d_matrix(&r, 0));
    }

    #[test]
    fn d_one_of_identity_is_three_times_product() {
        let a = j4();
        let r = Representation::adjoint(&a);
        let id = Cochain::from_entries(
            1,
            4,
            4,
            &(0..4).map(|i| (vec![i], i, int(1))).collect::<Vec<_>>(),
        )
        .unwrap();
        let dc = apply_d(&r, &id).unwrap();
        assert_eq!(dc.value(&[e(1), e(1)]), vec![int(0), int(3), int(0), int(0)]);
        assert_eq!(dc.value(&[e(3), e(1)]), vec![int(0), int(0), int(0), int(3)]);
        let via_matrix = d_matrix(&r, 1).mul_vec(id.coeffs());
        assert_eq!(via_matrix, dc.coeffs());
    }

    #[test]
    fn zigzag_composite_vanishes_on_j4() {
        for r in [Representation::trivial(&j4(), 1), Representation::adjoint(&j4())] {
            for p in 1..=3 {
                assert!(d_matrix(&r, p).mul(&delta_matrix(&r, p - 1)).is_zero(), "p = {p}");
            }
        }
    }

    #[test]
    fn j4_trivial_degree_one() {
        let r = Representation::trivial(&j4(), 1);
        let h = cohomology(&r, 1, SymmetryClass::Full).unwrap();
        assert_eq!((h.dim_cocycles, h.dim_coboundaries, h.dim_cohomology), (2, 0, 2));
        for v in h.representatives.vectors() {
            assert!(v[e(2)].is_zero() && v[e(4)].is_zero());
        }
    }

    #[test]
    fn j4_adjoint_low_degrees() {
        let r = Representation::adjoint(&j4());
        let h0 = cohomology(&r, 0, SymmetryClass::Full).unwrap();
        assert_eq!(h0.dim_cohomology, 2);
        assert!(h0.cocycle_basis.same_span(&j4().annihilator()).unwrap());
        let h1 = cohomology(&r, 1, SymmetryClass::Full).unwrap();
        assert_eq!((h1.dim_cocycles, h1.dim_coboundaries, h1.dim_cohomology), (7, 2, 5));
    }

    #[test]
    fn j4_trivial_degree_two() {
        let r = Representation::trivial(&j4(), 1);
        let full = cohomology(&r, 2, SymmetryClass::Full).unwrap();
        assert_eq!((full.dim_cocycles, full.dim_coboundaries, full.dim_cohomology), (9, 2, 7));
        let sym = cohomology(&r, 2, SymmetryClass::Symmetric).unwrap();
        assert_eq!((sym.dim_cocycles, sym.dim_coboundaries, sym.dim_cohomology), (4, 2, 2));
        let skew = cohomology(&r, 2, SymmetryClass::Skew).unwrap();
        assert_eq!((skew.dim_cocycles, skew.dim_coboundaries), (2, 0));
    }

    #[test]
    fn coboundary_witnesses() {
        let a = j4();
        let r = Representation::adjoint(&a);
        // c(e1,e1) = e1, c(e1,e2) = -e2, c(e2,e3) = -e4
        let c = Cochain::symmetric_from_entries(
            2,
            4,
            4,
            &[
                (vec![e(1), e(1)], e(1), int(1)),
                (vec![e(1), e(2)], e(2), int(-1)),
                (vec![e(2), e(3)], e(4), int(-1)),
            ],
        )
        .unwrap();
        assert!(is_cocycle(&r, &c).unwrap());
        let f = is_coboundary(&r, &c).unwrap().expect("coboundary");
        assert_eq!(apply_delta(&r, &f).unwrap(), c);
        assert_eq!(f.value(&[e(2)]), vec![int(-1), int(0), int(0), int(0)]);

        // c(e3,e3) = e2 is a cocycle but not a coboundary
        let c1 = Cochain::symmetric_from_entries(2, 4, 4, &[(vec![e(3), e(3)], e(2), int(1))])
            .unwrap();
        assert!(is_cocycle(&r, &c1).unwrap());
        assert!(is_coboundary(&r, &c1).unwrap().is_none());
        assert!(!cohomologous(&r, &c1, &Cochain::zero(2, 4, 4)).unwrap());
        assert!(cohomologous(&r, &c, &Cochain::zero(2, 4, 4)).unwrap());

        let z = Cochain::zero(2, 4, 4);
        assert!(is_coboundary(&r, &z).unwrap().unwrap().is_zero());
        assert_eq!(
            is_coboundary(&r, &Cochain::zero(0, 4, 4)),
            Err(CochainError::NoCoboundaryInDegreeZero)
        );
        assert!(matches!(
            cohomologous(&r, &c, &Cochain::zero(1, 4, 4)),
            Err(CochainError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn degree_cap() {
        let r = Representation::trivial(&j4(), 1);
        assert!(matches!(
            cohomology(&r, MAX_DEGREE + 1, SymmetryClass::Full),
            Err(CochainError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 0, 1]).len(), 6);
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(3).iter().filter(|(_, s)| *s < 0).count(), 3);
        assert_eq!(sort_sign(&[1, 0]), -1);
        assert_eq!(sort_sign(&[1, 1]), 0);
        assert_eq!(unflatten(4, 3, flat_index(4, &[3, 0, 2])), vec![3, 0, 2]);
    }
}
