//! Linear subspaces of coordinate spaces, stored by canonical RREF bases.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A subspace of `F^ambient_dim`.
///
/// The basis is the reduced row-echelon form of any spanning set, so two
/// subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: &F, ambient_dim: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        Self::from_spanning_rows(&Matrix::from_rows(field, ambient_dim, vectors))
    }

    /// Span of the rows of `m`.
    pub fn from_spanning_rows(m: &Matrix<F>) -> Self {
        let r = m.rref();
        Subspace {
            ambient_dim: m.cols(),
            basis: r.reduced,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs().map(|r| r.to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// `v` minus its projection along the basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong length");
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate().skip(p) {
                if !f.is_zero(b) {
                    out[j] = f.sub_mul(&out[j], &c, b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.row_vecs().all(|r| self.contains(r))
    }

    /// Coordinates of a member with respect to the RREF basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The member with the given basis coordinates.
    pub fn combination(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.dim(), "coordinate vector has wrong length");
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(self.basis.row_vecs()) {
            if f.is_zero(c) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !f.is_zero(b) {
                    *o = f.add(o, &f.mul(c, b));
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_spanning_rows(&self.basis.vstack(&other.basis)))
    }

    /// Intersection by the Zassenhaus algorithm: reduce `[a a; b 0]` and read
    /// off the rows whose left half vanishes.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = self.field().clone();
        let n = self.ambient_dim;
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(&f, other.dim(), n));
        let r = top.vstack(&bottom).rref();
        let rows: Vec<Vec<F::Elem>> = (0..r.rank)
            .filter(|&i| r.pivots[i] >= n)
            .map(|i| r.reduced.row(i)[n..].to_vec())
            .collect();
        Ok(Self::span(&f, n, rows))
    }

    /// Image of the subspace under `m` (vectors are columns: `v ↦ m·v`).
    pub fn map(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient_dim, "map has wrong source dimension");
        let images = self.basis.row_vecs().map(|r| m.mul_vec(r)).collect();
        Self::span(self.field(), m.rows(), images)
    }

    /// Whether `m·self ⊆ self`.
    pub fn is_stable_under(&self, m: &Matrix<F>) -> bool {
        self.basis.row_vecs().all(|r| self.contains(&m.mul_vec(r)))
    }

    /// Columns that are not pivots of the basis; coordinates on the quotient
    /// `F^n / self` are read off at these positions.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }
}

/// Coordinates on a subquotient `sup / sub` of `F^n`.
///
/// A vector of `sup` is first written in the RREF basis of `sup`; the image
/// of `sub` there is row-reduced, and the quotient coordinates are the
/// entries at its non-pivot positions after reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient<F: Field> {
    sub: Subspace<F>,
    sup: Subspace<F>,
    /// `k × n`; kills `sub`, identity on the chosen complement.
    proj: Matrix<F>,
    /// `n × k`; column `t` is a representative in `sup` of the `t`-th basis vector.
    lift: Matrix<F>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(sub: &Subspace<F>, sup: &Subspace<F>) -> Result<Self> {
        sub.check_ambient(sup)?;
        if !sup.contains_subspace(sub) {
            return Err(Error::DimensionMismatch(
                "subquotient requires sub ⊆ sup".to_string(),
            ));
        }
        let f = sup.field().clone();
        let n = sup.ambient_dim;
        let ds = sup.dim();
        // sub written in sup coordinates
        let sub_coords: Vec<Vec<F::Elem>> = sub
            .basis
            .row_vecs()
            .map(|r| sup.pivots.iter().map(|&p| r[p].clone()).collect())
            .collect();
        let inner = Subspace::span(&f, ds, sub_coords);
        let free = inner.non_pivot_columns();
        let k = free.len();

        // proj = Q' · P_sup, with P_sup selecting sup's pivot entries
        let mut proj = Matrix::zeros(&f, k, n);
        for (t, &j) in free.iter().enumerate() {
            proj.set(t, sup.pivots[j], f.one());
            for (i, &pi) in inner.pivots.iter().enumerate() {
                let c = inner.basis.get(i, j);
                if !f.is_zero(c) {
                    proj.set(t, sup.pivots[pi], f.neg(c));
                }
            }
        }
        let lift_cols: Vec<Vec<F::Elem>> = free.iter().map(|&j| sup.basis.row(j).to_vec()).collect();
        let lift = Matrix::from_columns(&f, n, &lift_cols);
        Ok(Subquotient {
            sub: sub.clone(),
            sup: sup.clone(),
            proj,
            lift,
        })
    }

    /// `F^n / sub` for `sub ⊆ F^n`.
    pub fn quotient_of_whole(sub: &Subspace<F>) -> Self {
        let whole = Subspace::whole(sub.field(), sub.ambient_dim);
        Self::new(sub, &whole).expect("every subspace lies in the whole space")
    }

    /// `sup / 0`, i.e. coordinates on `sup` itself.
    pub fn of_subspace(sup: &Subspace<F>) -> Self {
        let zero = Subspace::zero(sup.field(), sup.ambient_dim);
        Self::new(&zero, sup).expect("zero lies in every subspace")
    }

    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.proj.cols()
    }

    pub fn sub(&self) -> &Subspace<F> {
        &self.sub
    }

    pub fn sup(&self) -> &Subspace<F> {
        &self.sup
    }

    pub fn proj(&self) -> &Matrix<F> {
        &self.proj
    }

    pub fn lift(&self) -> &Matrix<F> {
        &self.lift
    }

    /// Quotient coordinates of `v`; meaningful for `v ∈ sup`.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.proj.mul_vec(v)
    }

    pub fn lift_vec(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.lift.mul_vec(coords)
    }

    /// Matrix of the map induced on the subquotient by `m`, assuming `m`
    /// preserves both `sub` and `sup`.
    pub fn induced(&self, m: &Matrix<F>) -> Matrix<F> {
        self.proj.mul(&m.mul(&self.lift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<crate::field::Rational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn whole_space_absorbs_intersection() {
        let b = Subspace::span(&Rationals, 3, vec![q(&[1, 2, 3]), q(&[0, 1, 1])]);
        let whole = Subspace::whole(&Rationals, 3);
        assert_eq!(whole.intersection(&b).unwrap(), b);
        assert_eq!(b.intersection(&whole).unwrap(), b);
    }

    #[test]
    fn orthogonal_subspaces_in_q4() {
        let a = Subspace::span(&Rationals, 4, vec![q(&[1, 1, 0, 0])]);
        let b = Subspace::span(&Rationals, 4, vec![q(&[1, -1, 0, 0]), q(&[0, 0, 1, 0])]);
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::whole(&Rationals, 2);
        let b = Subspace::whole(&Rationals, 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
        assert!(a.intersection(&b).is_err());
    }

    #[test]
    fn coordinates_and_combination_agree() {
        let s = Subspace::span(&Rationals, 3, vec![q(&[1, 2, 3]), q(&[2, 4, 7])]);
        let v = q(&[3, 6, 10]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combination(&c), v);
        assert!(s.coordinates(&q(&[0, 1, 0])).is_none());
    }

    #[test]
    fn subquotient_coordinates() {
        let f = PrimeField::new(3).unwrap();
        // sup = {x : x0 + x1 + x2 = 0}, sub = span{(1,1,1)}
        let sup = Subspace::span(&f, 3, vec![vec![1, 2, 0], vec![0, 1, 2]]);
        let sub = Subspace::span(&f, 3, vec![vec![1, 1, 1]]);
        let sq = Subquotient::new(&sub, &sup).unwrap();
        assert_eq!(sq.dim(), 1);
        assert!(sq.proj().mul(sq.lift()) == Matrix::identity(&f, 1));
        assert!(sq.project(&[1, 1, 1]).iter().all(|&x| x == 0));
        assert!(sup.contains(&sq.lift().column(0)));
        assert!(Subquotient::new(&sup, &sub).is_err());
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace<PrimeField>> {
        prop::collection::vec(prop::collection::vec(0u64..3, n), 0..n + 1)
            .prop_map(move |rows| Subspace::span(&PrimeField::new(3).unwrap(), n, rows))
    }

    proptest! {
        #[test]
        fn modular_law(a in arb_subspace(5), b in arb_subspace(5)) {
            let s = a.sum(&b).unwrap();
            let i = a.intersection(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
            prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        }

        #[test]
        fn subquotient_is_exact(a in arb_subspace(5), b in arb_subspace(5)) {
            let sup = a.sum(&b).unwrap();
            let sq = Subquotient::new(&a, &sup).unwrap();
            prop_assert_eq!(sq.dim(), sup.dim() - a.dim());
            let f = PrimeField::new(3).unwrap();
            prop_assert_eq!(sq.proj().mul(sq.lift()), Matrix::identity(&f, sq.dim()));
            for r in a.basis().row_vecs() {
                prop_assert!(sq.project(r).iter().all(|&x| x == 0));
            }
            // kernel of proj restricted to sup is exactly a
            let kernel_in_sup = sq.proj().kernel().intersection(&sup).unwrap();
            prop_assert_eq!(kernel_in_sup, a);
        }
    }
}
