//! The group algebra `A = R[Γ]` and its ideal filtration `J_q = I^q + A·I_Σ`.
//!
//! Elements of `A` are coefficient vectors indexed by the canonical element
//! order of the group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{FiniteGroup, NormalSubgroup};
use crate::matrix::Matrix;
use crate::subspace::{Subquotient, Subspace};

#[derive(Clone, Debug)]
pub struct GroupAlgebra<F: Field> {
    group: Arc<FiniteGroup>,
    field: F,
}

impl<F: Field> GroupAlgebra<F> {
    pub fn new(group: Arc<FiniteGroup>, field: F) -> Self {
        GroupAlgebra { group, field }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    /// The basis vector of a group element.
    pub fn element(&self, g: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[g] = self.field.one();
        v
    }

    /// `g − e`.
    pub fn augmentation_generator(&self, g: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[g] = self.field.add(&v[g], &self.field.one());
        v[0] = self.field.sub(&v[0], &self.field.one());
        v
    }

    /// `g · x`.
    pub fn left_mul_element(&self, g: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (h, c) in x.iter().enumerate() {
            out[self.group.mul(g, h)] = c.clone();
        }
        out
    }

    /// `x · g`.
    pub fn right_mul_element(&self, x: &[F::Elem], g: usize) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (h, c) in x.iter().enumerate() {
            out[self.group.mul(h, g)] = c.clone();
        }
        out
    }

    /// Product in `A`.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (g, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (h, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let gh = self.group.mul(g, h);
                out[gh] = f.add(&out[gh], &f.mul(a, b));
            }
        }
        out
    }

    /// The augmentation `Σ c_γ γ ↦ Σ c_γ`.
    pub fn augmentation(&self, x: &[F::Elem]) -> F::Elem {
        x.iter().fold(self.field.zero(), |acc, c| self.field.add(&acc, c))
    }

    /// Matrix of `x ↦ g·x`.
    pub fn left_mult(&self, g: usize) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for h in 0..n {
            m.set(self.group.mul(g, h), h, self.field.one());
        }
        m
    }

    /// Matrix of `x ↦ x·g`.
    pub fn right_mult(&self, g: usize) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for h in 0..n {
            m.set(self.group.mul(h, g), h, self.field.one());
        }
        m
    }

    pub fn is_left_stable(&self, s: &Subspace<F>, g: usize) -> bool {
        s.basis().row_vecs().all(|x| s.contains(&self.left_mul_element(g, x)))
    }

    pub fn is_right_stable(&self, s: &Subspace<F>, g: usize) -> bool {
        s.basis().row_vecs().all(|x| s.contains(&self.right_mul_element(x, g)))
    }

    /// Two-sided ideal test against every group element.
    pub fn is_two_sided_ideal(&self, s: &Subspace<F>) -> bool {
        (0..self.dim()).all(|g| self.is_left_stable(s, g) && self.is_right_stable(s, g))
    }

    /// Two-sided ideal test against the generators only (which suffices).
    fn certify_two_sided(&self, s: &Subspace<F>, what: &str) -> Result<()> {
        for &g in self.group.generators() {
            if !self.is_left_stable(s, g) || !self.is_right_stable(s, g) {
                return Err(Error::Certification(format!(
                    "{what} is not a two-sided ideal (element {g})"
                )));
            }
        }
        Ok(())
    }

    /// The augmentation ideal `I = span{γ − e}`.
    pub fn augmentation_ideal(&self) -> Subspace<F> {
        let gens = (1..self.dim()).map(|g| self.augmentation_generator(g)).collect();
        Subspace::span(&self.field, self.dim(), gens)
    }

    /// The two-sided ideal `A·I_Σ`, spanned by `γ(σ − e)` with σ running over
    /// generators of Σ.
    pub fn sigma_ideal(&self, sigma: &NormalSubgroup) -> Result<Subspace<F>> {
        let mut span = Vec::new();
        for &s in sigma.generators() {
            let gen = self.augmentation_generator(s);
            for g in 0..self.dim() {
                span.push(self.left_mul_element(g, &gen));
            }
        }
        let ideal = Subspace::span(&self.field, self.dim(), span);
        self.certify_two_sided(&ideal, "A·I_Σ")?;
        let expected = self.dim() - self.dim() / sigma.order();
        if ideal.dim() != expected {
            return Err(Error::Certification(format!(
                "dim A·I_Σ = {} but |Γ| − |Γ/Σ| = {expected}",
                ideal.dim()
            )));
        }
        Ok(ideal)
    }

    /// `P · I`, the product of a right-stable subspace with the augmentation
    /// ideal, spanned by `x·(s − e)` for basis vectors `x` and group
    /// generators `s`.
    fn times_augmentation(&self, p: &Subspace<F>) -> Subspace<F> {
        let mut span = Vec::new();
        for x in p.basis().row_vecs() {
            for &s in self.group.generators() {
                span.push(self.mul(x, &self.augmentation_generator(s)));
            }
        }
        Subspace::span(&self.field, self.dim(), span)
    }
}

/// The descending chain `J_1 ⊇ J_2 ⊇ …` together with the powers of `I`.
#[derive(Clone, Debug)]
pub struct IdealFiltration<F: Field> {
    augmentation: Subspace<F>,
    sigma_ideal: Subspace<F>,
    /// `I^q` for `q = 1..=len`.
    powers: Vec<Subspace<F>>,
    /// `J_q` for `q = 1..=len`.
    j: Vec<Subspace<F>>,
    stabilization_q: usize,
}

impl<F: Field> IdealFiltration<F> {
    /// Computes `J_q` for `q = 1..=max(q_max, stabilization_q + 1)`.
    ///
    /// `q_max = None` stops right after the filtration stabilizes.
    pub fn new(algebra: &GroupAlgebra<F>, sigma: &NormalSubgroup, q_max: Option<usize>) -> Result<Self> {
        let augmentation = algebra.augmentation_ideal();
        let sigma_ideal = algebra.sigma_ideal(sigma)?;
        let mut powers = vec![augmentation.clone()];
        let mut j = vec![augmentation.sum(&sigma_ideal)?];
        let mut stabilization_q = None;
        loop {
            let q = j.len();
            if let Some(s) = stabilization_q {
                if q >= q_max.unwrap_or(0).max(s + 1) {
                    break;
                }
            }
            let next_power = algebra.times_augmentation(&powers[q - 1]);
            let next_j = next_power.sum(&sigma_ideal)?;
            if stabilization_q.is_none() && next_j == j[q - 1] {
                stabilization_q = Some(q);
            }
            powers.push(next_power);
            j.push(next_j);
            if stabilization_q.is_none() && q > algebra.dim() {
                return Err(Error::Certification("filtration failed to stabilize".into()));
            }
        }
        for (q, jq) in j.iter().enumerate() {
            algebra.certify_two_sided(jq, &format!("J_{}", q + 1))?;
        }
        Ok(IdealFiltration {
            augmentation,
            sigma_ideal,
            powers,
            j,
            stabilization_q: stabilization_q.expect("loop exits only after stabilization"),
        })
    }

    /// Number of computed terms.
    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    pub fn augmentation_ideal(&self) -> &Subspace<F> {
        &self.augmentation
    }

    pub fn sigma_ideal(&self) -> &Subspace<F> {
        &self.sigma_ideal
    }

    /// Smallest `q` with `J_q = J_{q+1}`.
    pub fn stabilization_q(&self) -> usize {
        self.stabilization_q
    }

    fn check(&self, q: usize, len: usize) -> Result<()> {
        if q == 0 || q > len {
            return Err(Error::FiltrationRange { q, len });
        }
        Ok(())
    }

    pub fn j(&self, q: usize) -> Result<&Subspace<F>> {
        self.check(q, self.len())?;
        Ok(&self.j[q - 1])
    }

    /// `J_q` for any `q ≥ 1`, using `J_q = J_s` past the stabilization index `s`.
    pub fn j_stable(&self, q: usize) -> &Subspace<F> {
        assert!(q >= 1, "J_q is defined for q >= 1");
        &self.j[q.min(self.len()) - 1]
    }

    pub fn i_power(&self, q: usize) -> Result<&Subspace<F>> {
        self.check(q, self.len())?;
        Ok(&self.powers[q - 1])
    }

    /// `N(q) = dim J_q − dim J_{q+1}`.
    pub fn n_dimension(&self, q: usize) -> Result<usize> {
        self.check(q + 1, self.len()).map_err(|_| Error::FiltrationRange {
            q,
            len: self.len().saturating_sub(1),
        })?;
        Ok(self.j[q - 1].dim() - self.j[q].dim())
    }

    /// Representatives in `J_q` of a basis of `J_q / J_{q+1}` (canonical
    /// complement of the RREF basis of `J_{q+1}`), one per row.
    pub fn complement_basis(&self, q: usize) -> Result<Matrix<F>> {
        self.n_dimension(q)?;
        let sq = Subquotient::new(&self.j[q], &self.j[q - 1])?;
        Ok(sq.lift().transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::group::Permutation;

    fn s3() -> Arc<FiniteGroup> {
        let gens = [
            Permutation::new(vec![1, 2, 0]).unwrap(),
            Permutation::new(vec![1, 0, 2]).unwrap(),
        ];
        Arc::new(FiniteGroup::close_generators(&gens, 24).unwrap())
    }

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn augmentation_ideal_dims() {
        let triv = GroupAlgebra::new(Arc::new(FiniteGroup::trivial()), Rationals);
        assert_eq!(triv.augmentation_ideal().dim(), 0);

        let c2 = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(2)), f(2));
        let i = c2.augmentation_ideal();
        assert_eq!(i.dim(), 1);
        assert_eq!(i.basis().row(0), &[1, 1]);

        let s3q = GroupAlgebra::new(s3(), Rationals);
        let i = s3q.augmentation_ideal();
        assert_eq!(i.dim(), 5);
        let ones = Matrix::from_rows(&Rationals, 6, vec![vec![Rationals.one(); 6]]);
        assert_eq!(i, ones.kernel());
    }

    #[test]
    fn sigma_ideal_cases() {
        let alg = GroupAlgebra::new(s3(), f(2));
        let g = alg.group().clone();
        assert!(alg.sigma_ideal(&NormalSubgroup::trivial()).unwrap().is_zero());
        assert_eq!(alg.sigma_ideal(&NormalSubgroup::whole(&g)).unwrap(), alg.augmentation_ideal());
        let a3 = NormalSubgroup::closure(&g, &[1]).unwrap();
        let ideal = alg.sigma_ideal(&a3).unwrap();
        assert_eq!(ideal.dim(), 4);
        assert!(alg.is_two_sided_ideal(&ideal));
    }

    #[test]
    fn sigma_ideal_is_kernel_of_projection_to_quotient_group() {
        // A → R[Γ/Σ] sends γ to its coset; A·I_Σ is its kernel.
        let alg = GroupAlgebra::new(s3(), f(2));
        let g = alg.group().clone();
        let a3 = NormalSubgroup::closure(&g, &[1]).unwrap();
        let coset = |x: usize| usize::from(!a3.contains(x));
        let proj = Matrix::from_fn(&f(2), 2, 6, |i, j| u64::from(coset(j) == i));
        assert_eq!(alg.sigma_ideal(&a3).unwrap(), proj.kernel());
    }

    #[test]
    fn filtration_cyclic_three() {
        let alg = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(3)), f(3));
        let filt = IdealFiltration::new(&alg, &NormalSubgroup::trivial(), Some(5)).unwrap();
        let dims: Vec<usize> = (1..=5).map(|q| filt.j(q).unwrap().dim()).collect();
        assert_eq!(dims, vec![2, 1, 0, 0, 0]);
        assert_eq!(filt.stabilization_q(), 3);
        for q in 1..=5 {
            assert_eq!(filt.j(q).unwrap(), filt.i_power(q).unwrap());
        }
    }

    #[test]
    fn filtration_s3_a3_over_f2() {
        let alg = GroupAlgebra::new(s3(), f(2));
        let a3 = NormalSubgroup::closure(alg.group(), &[1]).unwrap();
        let filt = IdealFiltration::new(&alg, &a3, None).unwrap();
        assert_eq!(filt.len(), 3);
        assert_eq!(filt.stabilization_q(), 2);
        let dims: Vec<usize> = (1..=3).map(|q| filt.j(q).unwrap().dim()).collect();
        assert_eq!(dims, vec![5, 4, 4]);
        assert_eq!(filt.n_dimension(1).unwrap(), 1);
        assert_eq!(filt.n_dimension(2).unwrap(), 0);
        assert!(matches!(filt.n_dimension(3), Err(Error::FiltrationRange { .. })));
        assert!(filt.j(0).is_err());
        assert_eq!(filt.complement_basis(1).unwrap().rows(), 1);
    }

    #[test]
    fn filtration_c2_over_f2() {
        let alg = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(2)), f(2));
        let filt = IdealFiltration::new(&alg, &NormalSubgroup::trivial(), Some(4)).unwrap();
        assert_eq!(filt.n_dimension(1).unwrap(), 1);
        assert_eq!(filt.n_dimension(2).unwrap(), 0);
        assert_eq!(filt.n_dimension(3).unwrap(), 0);
    }

    #[test]
    fn whole_sigma_gives_constant_filtration() {
        let alg = GroupAlgebra::new(s3(), f(3));
        let filt = IdealFiltration::new(&alg, &NormalSubgroup::whole(alg.group()), Some(4)).unwrap();
        assert_eq!(filt.stabilization_q(), 1);
        for q in 1..=4 {
            assert_eq!(filt.j(q).unwrap(), &alg.augmentation_ideal());
        }
        for q in 1..4 {
            assert_eq!(filt.n_dimension(q).unwrap(), 0);
        }
    }

    #[test]
    fn multiplication_matrices_are_a_representation() {
        let alg = GroupAlgebra::new(s3(), Rationals);
        let g = alg.group().clone();
        assert_eq!(alg.left_mult(0), Matrix::identity(&Rationals, 6));
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(alg.left_mult(a).mul(&alg.left_mult(b)), alg.left_mult(g.mul(a, b)));
                assert_eq!(alg.left_mult(a).mul(&alg.right_mult(b)), alg.right_mult(b).mul(&alg.left_mult(a)));
            }
        }
    }

    #[test]
    fn filtration_inclusions_and_two_sidedness() {
        let g = Arc::new(FiniteGroup::symmetric(4));
        for field in [f(2), f(3)] {
            let alg = GroupAlgebra::new(g.clone(), field);
            for sigma in [NormalSubgroup::trivial(), NormalSubgroup::whole(&g)] {
                let filt = IdealFiltration::new(&alg, &sigma, None).unwrap();
                assert!(filt.stabilization_q() <= g.order());
                for q in 1..filt.len() {
                    let (jq, jq1) = (filt.j(q).unwrap(), filt.j(q + 1).unwrap());
                    assert!(jq.contains_subspace(jq1));
                    assert!(alg.is_two_sided_ideal(jq));
                    // I·J_q ⊆ J_{q+1} and J_q·I ⊆ J_{q+1}
                    for x in jq.basis().row_vecs() {
                        for y in filt.augmentation_ideal().basis().row_vecs() {
                            assert!(jq1.contains(&alg.mul(x, y)));
                            assert!(jq1.contains(&alg.mul(y, x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rational_augmentation_ideal_is_idempotent() {
        let alg = GroupAlgebra::new(s3(), Rationals);
        let filt = IdealFiltration::new(&alg, &NormalSubgroup::trivial(), Some(3)).unwrap();
        assert_eq!(filt.stabilization_q(), 1);
        assert_eq!(filt.i_power(2).unwrap(), filt.augmentation_ideal());
    }
}
