//! Incremental sparse row reduction.
//!
//! Coboundary operators have `m·n^(p+1)` rows but only a handful of nonzeros
//! per row, so kernels are found by feeding rows one at a time into an
//! echelon form instead of materialising the dense matrix. Results coincide
//! exactly with the dense routines: the reduced row echelon form is unique,
//! and independence scans pick the same first maximal subsequence.

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;
use super::subspace::SubspaceBasis;

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sorts by column and merges duplicates, dropping zeros.
pub fn canonicalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `a - s*b`.
fn axpy(a: &SparseVec, s: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(s * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - s * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time. Pivot rows are normalised to a
/// leading 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots; returns true if it was
    /// independent (and is now a new pivot row).
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = row;
        while let Some((lead, x)) = row.first().cloned() {
            match self.pivot_row[lead] {
                Some(r) => row = axpy(&row, &x, &self.rows[r]),
                None => {
                    if !x.is_one() {
                        let inv = x.recip();
                        for (_, y) in row.iter_mut() {
                            *y *= &inv;
                        }
                    }
                    self.pivot_row[lead] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }

    pub fn insert_dense(&mut self, row: &[Rational]) -> bool {
        self.insert(to_sparse(row))
    }

    /// True if `row` lies in the current row span.
    pub fn spans(&self, row: &[Rational]) -> bool {
        let mut row = to_sparse(row);
        while let Some((lead, x)) = row.first().cloned() {
            match self.pivot_row[lead] {
                Some(r) => row = axpy(&row, &x, &self.rows[r]),
                None => return false,
            }
        }
        true
    }

    /// Back-substitutes to the reduced form; returns `(pivot column, row)`
    /// pairs sorted by pivot.
    fn reduced(&self) -> Vec<(usize, SparseVec)> {
        let mut by_pivot: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        by_pivot.sort();
        let mut done: Vec<Option<SparseVec>> = vec![None; self.cols];
        for &(pc, r) in by_pivot.iter().rev() {
            let mut row = self.rows[r].clone();
            let mut idx = 1;
            while idx < row.len() {
                let (c, x) = row[idx].clone();
                match &done[c] {
                    Some(prow) => row = axpy(&row, &x, prow),
                    None => idx += 1,
                }
            }
            done[pc] = Some(row);
        }
        by_pivot
            .into_iter()
            .map(|(c, _)| (c, done[c].take().expect("reduced")))
            .collect()
    }

    /// Kernel of the matrix whose rows were inserted, in the same normal form
    /// as [`super::nullspace`].
    pub fn nullspace(&self) -> SubspaceBasis {
        let reduced = self.reduced();
        let is_pivot: Vec<bool> = self.pivot_row.iter().map(Option::is_some).collect();
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut col_of_free = vec![usize::MAX; self.cols];
        for (k, &f) in free.iter().enumerate() {
            col_of_free[f] = k;
        }
        let mut basis = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Rational::one());
        }
        for (p, row) in &reduced {
            for (c, x) in row.iter().skip(1) {
                basis.set(*p, col_of_free[*c], -x.clone());
            }
        }
        SubspaceBasis::from_matrix_unchecked(basis)
    }
}

/// Kernel of the matrix with the given rows.
pub fn sparse_nullspace<I: IntoIterator<Item = SparseVec>>(cols: usize, rows: I) -> SubspaceBasis {
    let mut e = SparseEchelon::new(cols);
    for r in rows {
        if e.rank() == cols {
            break;
        }
        e.insert(r);
    }
    e.nullspace()
}

/// Indices of the first maximal linearly independent subsequence.
pub fn independent_subsequence(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut e = SparseEchelon::new(ambient_dim);
    let mut keep = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if e.insert_dense(v) {
            keep.push(i);
        }
    }
    keep
}
