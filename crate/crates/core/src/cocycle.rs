//! `H_q^1 ≅ Hom_A(J_q, V) / α(V)` with `α(v)(x) = x·v`, computed without
//! resolutions.

use crate::algebra::{GroupAlgebra, IdealFiltration};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::NormalSubgroup;
use crate::matrix::Matrix;
use crate::module::GammaModule;
use crate::subspace::{Subquotient, Subspace};

/// `A`-linear maps `J_q → V`, as tuples `(φ(x_0), …, φ(x_{k−1}))` over the
/// RREF basis `x_l` of `J_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomSpace<F: Field> {
    pub source_dim: usize,
    pub module_dim: usize,
    pub maps: Subspace<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.maps.dim()
    }
}

/// Imposes `φ(γ·x_k) = γ·φ(x_k)` for group generators `γ` and basis vectors
/// `x_k` of `ideal`.
fn hom_from_ideal<F: Field>(algebra: &GroupAlgebra<F>, ideal: &Subspace<F>, v: &GammaModule<F>) -> Result<HomSpace<F>> {
    let field = algebra.field();
    let k = ideal.dim();
    let d = v.dim();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for &g in algebra.group().generators() {
        for (kk, x) in ideal.basis().row_vecs().enumerate() {
            let gx = algebra.left_mul_element(g, x);
            let coords = ideal
                .coordinates(&gx)
                .ok_or_else(|| Error::Certification("ideal is not left stable".into()))?;
            let act = v.action(g);
            for r in 0..d {
                let mut row = vec![field.zero(); k * d];
                for (l, c) in coords.iter().enumerate() {
                    if !field.is_zero(c) {
                        row[l * d + r] = field.add(&row[l * d + r], c);
                    }
                }
                for s in 0..d {
                    let a = act.get(r, s);
                    if !field.is_zero(a) {
                        row[kk * d + s] = field.sub(&row[kk * d + s], a);
                    }
                }
                rows.push(row);
            }
        }
    }
    let maps = Matrix::from_rows(field, k * d, rows).kernel();
    Ok(HomSpace {
        source_dim: k,
        module_dim: d,
        maps,
    })
}

/// `Hom_A(J_q, V)`.
pub fn hom_a_space<F: Field>(
    algebra: &GroupAlgebra<F>,
    filtration: &IdealFiltration<F>,
    q: usize,
    v: &GammaModule<F>,
) -> Result<HomSpace<F>> {
    hom_from_ideal(algebra, filtration.j(q)?, v)
}

/// `α : V → Hom_A(J_q, V)` in the ambient tuple coordinates (`k·d × d`):
/// the stacked action matrices of the basis of `J_q`.
fn alpha_ambient<F: Field>(ideal: &Subspace<F>, v: &GammaModule<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(v.field(), 0, v.dim());
    for x in ideal.basis().row_vecs() {
        m = m.vstack(&v.algebra_action(x));
    }
    m
}

/// `α` in the coordinates of the basis of `hom`, certified to land there.
pub fn alpha_map<F: Field>(
    filtration: &IdealFiltration<F>,
    q: usize,
    v: &GammaModule<F>,
    hom: &HomSpace<F>,
) -> Result<Matrix<F>> {
    let ambient = alpha_ambient(filtration.j(q)?, v);
    let mut cols = Vec::with_capacity(v.dim());
    for j in 0..v.dim() {
        let c = hom
            .maps
            .coordinates(&ambient.column(j))
            .ok_or(Error::AlphaNotAHom { vector: j })?;
        cols.push(c);
    }
    Ok(Matrix::from_columns(v.field(), hom.dim(), &cols))
}

/// `dim Hom_A(J_q, V) − rank α`.
pub fn h_q1_from_filtration<F: Field>(
    algebra: &GroupAlgebra<F>,
    filtration: &IdealFiltration<F>,
    q: usize,
    v: &GammaModule<F>,
) -> Result<usize> {
    let hom = hom_a_space(algebra, filtration, q, v)?;
    let alpha = alpha_map(filtration, q, v, &hom)?;
    Ok(hom.dim() - alpha.rank())
}

/// `dim H_q^1(Γ, Σ, V)` through cocycles.
pub fn h_q1_cocycle<F: Field>(sigma: &NormalSubgroup, v: &GammaModule<F>, q: usize) -> Result<usize> {
    let algebra = GroupAlgebra::new(v.group().clone(), v.field().clone());
    let filtration = IdealFiltration::new(&algebra, sigma, Some(q))?;
    h_q1_from_filtration(&algebra, &filtration, q, v)
}

/// `Hom_A(J_q, V)/α(V)` as a subquotient of tuple space.
fn cocycle_h1<F: Field>(algebra: &GroupAlgebra<F>, ideal: &Subspace<F>, v: &GammaModule<F>) -> Result<Subquotient<F>> {
    let hom = hom_from_ideal(algebra, ideal, v)?;
    let alpha = alpha_ambient(ideal, v).image();
    Subquotient::new(&alpha, &hom.maps)
}

/// Restriction `Hom_A(J_q, V)/α → Hom_A(J_{q+1}, V)/α`, the cocycle
/// counterpart of `H_q^1 → H_{q+1}^1`.
pub fn restriction_map<F: Field>(
    algebra: &GroupAlgebra<F>,
    filtration: &IdealFiltration<F>,
    q: usize,
    v: &GammaModule<F>,
) -> Result<Matrix<F>> {
    let field = algebra.field();
    let (big, small) = (filtration.j(q)?, filtration.j(q + 1)?);
    let d = v.dim();
    let source = cocycle_h1(algebra, big, v)?;
    let target = cocycle_h1(algebra, small, v)?;
    // φ(y_m) = Σ_l c_ml φ(x_l) for y_m = Σ_l c_ml x_l
    let mut res = Matrix::zeros(field, small.dim() * d, big.dim() * d);
    for (m, y) in small.basis().row_vecs().enumerate() {
        let coords = big
            .coordinates(y)
            .ok_or_else(|| Error::Certification("filtration is not descending".into()))?;
        for (l, c) in coords.iter().enumerate() {
            if !field.is_zero(c) {
                res.set_block(m * d, l * d, &Matrix::identity(field, d).scale(c));
            }
        }
    }
    Ok(target.proj().mul(&res).mul(source.lift()))
}
