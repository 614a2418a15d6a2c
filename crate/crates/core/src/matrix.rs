//! Dense exact matrices and Gauss-Jordan elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::subspace::Subspace;

/// A dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub rank: usize,
    /// The nonzero rows of the reduced row-echelon form (`rank × cols`).
    pub reduced: Matrix<F>,
    /// Pivot column of each row of `reduced`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors, all of length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row has wrong length");
            data.extend(r);
        }
        Self::from_vec(field, n, cols, data)
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(field, rows, cols, data)
    }

    /// Parses a row-major grid of literals.
    pub fn parse(field: &F, rows: usize, cols: usize, cells: &[Vec<String>]) -> Result<Self> {
        if cells.len() != rows || cells.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("expected a {rows}x{cols} grid")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in cells {
            for c in r {
                data.push(field.parse(c)?);
            }
        }
        Ok(Self::from_vec(field, rows, cols, data))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[F::Elem]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        *o = f.add(o, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| self.field.add(a, b)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    /// `self += c * rhs`.
    pub fn add_scaled(&mut self, c: &F::Elem, rhs: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        if self.field.is_zero(c) {
            return;
        }
        let f = &self.field;
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !f.is_zero(b) {
                *a = f.add(a, &f.mul(c, b));
            }
        }
    }

    /// Places `rhs` to the right of `self`.
    pub fn hstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(&self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    /// Places `rhs` below `self`.
    pub fn vstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Self::from_vec(&self.field, self.rows + rhs.rows, self.cols, data)
    }

    /// Block matrix from a grid of equally shaped rows of blocks.
    pub fn block(field: &F, blocks: &[Vec<&Matrix<F>>]) -> Matrix<F> {
        let rows: usize = blocks.iter().map(|r| r.first().map_or(0, |b| b.rows)).sum();
        let cols: usize = blocks.first().map_or(0, |r| r.iter().map(|b| b.cols).sum());
        let mut out = Self::zeros(field, rows, cols);
        let mut r0 = 0;
        for brow in blocks {
            let mut c0 = 0;
            let h = brow.first().map_or(0, |b| b.rows);
            for b in brow {
                assert_eq!(b.rows, h, "ragged block row");
                out.set_block(r0, c0, b);
                c0 += b.cols;
            }
            assert_eq!(c0, cols, "ragged block grid");
            r0 += h;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<F>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix<F> {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<F> {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    ///
    /// Pivots are taken in the leftmost column that still has a nonzero entry,
    /// from the first such row, and are scaled to 1. The result is the unique
    /// RREF of the input.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref {
            rank,
            reduced: m,
            pivots,
        }
    }

    /// Row-reduces in place and returns the pivot columns; rows past the
    /// rank are left zero.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]);
            nz.clear();
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                if !f.is_zero(x) {
                    if j != c {
                        *x = f.mul(x, &inv);
                    }
                    nz.push(j);
                }
            }
            self.data[r * cols + c] = f.one();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for &j in &nz {
                    let (src, dst) = (r * cols + j, i * cols + j);
                    let v = f.sub_mul(&self.data[dst], &factor, &self.data[src]);
                    self.data[dst] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            self.transpose().rref_in_place().len()
        } else {
            self.clone().rref_in_place().len()
        }
    }

    /// Right kernel `{x : self·x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(reduced.get(i, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, basis)
    }

    /// Column space as a subspace of `F^rows`.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_spanning_rows(&self.transpose())
    }

    /// Solves `self · X = rhs`. Free variables are set to zero, so the answer
    /// is deterministic. Returns `None` when some column has no solution.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(&self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let b = Self::from_columns(&self.field, self.rows, &[rhs.to_vec()]);
        self.solve(&b).map(|x| x.column(0))
    }

    /// Rendering of every entry with [`Field::format`], row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.row_vecs()
            .map(|r| r.iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in self.to_strings() {
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally grown row-echelon basis.
///
/// Rows are kept with a leading 1 at distinct pivot columns and sorted by
/// pivot, but are not back-reduced. Useful when a span is assembled from a
/// long stream of (sparse) vectors and only its rank or membership matters.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        EchelonBuilder {
            field: field.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Residual of `v` after elimination against the current rows.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for j in *p..self.cols {
                if !f.is_zero(&row[j]) {
                    v[j] = f.sub_mul(&v[j], &factor, &row[j]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.cols, "vector has wrong length");
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v[p..].iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn into_subspace(self) -> Subspace<F> {
        let field = self.field.clone();
        let cols = self.cols;
        Subspace::span(&field, cols, self.rows.into_iter().map(|(_, r)| r).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            &Rationals,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect(),
        )
    }

    fn fm(p: u64, rows: &[&[u64]]) -> Matrix<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&f, cols, rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn rref_of_empty_matrix() {
        let m = Matrix::zeros(&Rationals, 0, 0);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_of_identity() {
        let id = Matrix::identity(&Rationals, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_over_f2_collapses_equal_rows() {
        let r = fm(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, fm(2, &[&[1, 1]]));
    }

    #[test]
    fn rref_rational_entries() {
        let r = qm(&[&[2, 4, 1], &[1, 2, 3], &[0, 0, 5]]).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.reduced, qm(&[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn kernel_over_f2() {
        let k = fm(2, &[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[1, 1]);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let b = qm(&[&[5], &[6]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = qm(&[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&qm(&[&[1], &[2]])).is_none());
    }

    #[test]
    fn echelon_builder_tracks_rank() {
        let f = PrimeField::new(3).unwrap();
        let mut e = EchelonBuilder::new(&f, 3);
        assert!(e.insert(vec![0, 1, 2]));
        assert!(e.insert(vec![1, 1, 0]));
        assert!(!e.insert(vec![1, 2, 2]));
        assert!(e.contains(&[2, 1, 1]));
        assert!(!e.contains(&[2, 0, 1]));
        assert_eq!(e.rank(), 2);
        let s = e.into_subspace();
        assert_eq!(s, fm(3, &[&[0, 1, 2], &[1, 1, 0]]).image_of_rows());
    }

    impl Matrix<PrimeField> {
        fn image_of_rows(&self) -> Subspace<PrimeField> {
            Subspace::from_spanning_rows(self)
        }
    }

    fn arb_fp_matrix() -> impl Strategy<Value = Matrix<PrimeField>> {
        (prop::sample::select(vec![2u64, 3, 5]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |data| {
                Matrix::from_vec(&PrimeField::new(p).unwrap(), r, c, data)
            })
        })
    }

    fn arb_q_matrix() -> impl Strategy<Value = Matrix<Rationals>> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-4i64..5, r * c).prop_map(move |data| {
                Matrix::from_vec(&Rationals, r, c, data.into_iter().map(|x| Rationals.from_i64(x)).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_fp(m in arb_fp_matrix()) {
            let once = m.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once);
        }

        #[test]
        fn rank_nullity_fp(m in arb_fp_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            prop_assert!(m.mul(&m.kernel().basis().transpose()).is_zero());
        }

        #[test]
        fn rref_is_idempotent_q(m in arb_q_matrix()) {
            let once = m.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once);
        }

        #[test]
        fn rank_nullity_q(m in arb_q_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.image().dim(), m.rank());
        }

        #[test]
        fn rref_is_deterministic(m in arb_q_matrix()) {
            prop_assert_eq!(m.rref(), m.clone().rref());
        }
    }
}
