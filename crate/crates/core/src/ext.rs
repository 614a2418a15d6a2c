//! `Ext_A^p(M, V)` from free resolutions, the higher cohomology engine, and an
//! independent inhomogeneous-cochain oracle for ordinary group cohomology.

use std::sync::Arc;

use crate::algebra::{GroupAlgebra, IdealFiltration};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{FiniteGroup, NormalSubgroup};
use crate::matrix::{EchelonBuilder, Matrix};
use crate::module::GammaModule;
use crate::resolution::{
    CandidateOrder, FreeResolution, ResolutionCache, ResolutionKey, ResolvedModule,
};
use crate::subspace::{Subquotient, Subspace};

/// Precomposition with an `A`-linear map `d : A^n → A^m` on
/// `Hom_A(A^m, V) = V^m → Hom_A(A^n, V) = V^n`.
///
/// A hom is the tuple of generator images. Block `(j, i)` of the result is
/// `ρ(a_ij)` where `a_ij ∈ A` is block `i` of `d(e_j)`.
pub fn pullback<F: Field>(v: &GammaModule<F>, d: &Matrix<F>, n: usize, m: usize) -> Matrix<F> {
    let order = v.group().order();
    assert_eq!(d.cols(), n * order, "pullback source rank mismatch");
    assert_eq!(d.rows(), m * order, "pullback target rank mismatch");
    let dim = v.dim();
    let field = v.field();
    let mut out = Matrix::zeros(field, n * dim, m * dim);
    for j in 0..n {
        let col = d.column(j * order);
        for i in 0..m {
            let a = &col[i * order..(i + 1) * order];
            if a.iter().all(|x| field.is_zero(x)) {
                continue;
            }
            out.set_block(j * dim, i * dim, &v.algebra_action(a));
        }
    }
    out
}

/// A bounded cochain complex `C^0 → C^1 → … → C^L`.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    /// `deltas[p] : C^p → C^{p+1}`.
    deltas: Vec<Matrix<F>>,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(field: &F, dims: Vec<usize>, deltas: Vec<Matrix<F>>) -> Result<Self> {
        if deltas.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch("cochain complex needs one more term than maps".into()));
        }
        for (p, d) in deltas.iter().enumerate() {
            if d.cols() != dims[p] || d.rows() != dims[p + 1] {
                return Err(Error::DimensionMismatch(format!("coboundary δ^{p} has the wrong shape")));
            }
        }
        Ok(CochainComplex {
            field: field.clone(),
            dims,
            deltas,
        })
    }

    /// `Hom_A(F_•, V)` for a resolution `F_•`.
    pub fn hom(res: &FreeResolution<F>, v: &GammaModule<F>) -> Self {
        let dims = res.ranks().iter().map(|n| n * v.dim()).collect();
        let deltas = (0..res.length())
            .map(|p| pullback(v, res.boundary(p + 1), res.rank(p + 1), res.rank(p)))
            .collect();
        CochainComplex {
            field: v.field().clone(),
            dims,
            deltas,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.deltas.len()
    }

    pub fn delta(&self, p: usize) -> &Matrix<F> {
        &self.deltas[p]
    }

    /// Whether `δ^{p+1} ∘ δ^p` vanishes identically for every `p`.
    pub fn is_complex(&self) -> bool {
        self.deltas.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// Cohomology in degree `p`; needs `δ^p`, so `p < top()`.
    pub fn cohomology(&self, p: usize) -> Result<ExtGroup<F>> {
        if p >= self.top() {
            return Err(Error::ResolutionTooShort {
                length: self.top(),
                degree: p,
            });
        }
        let cocycles = self.deltas[p].kernel();
        let coboundaries = if p == 0 {
            Subspace::zero(&self.field, self.dims[0])
        } else {
            self.deltas[p - 1].image()
        };
        let quotient = Subquotient::new(&coboundaries, &cocycles)?;
        Ok(ExtGroup { p, quotient })
    }
}

/// `Z^p / B^p` with chosen representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtGroup<F: Field> {
    p: usize,
    quotient: Subquotient<F>,
}

impl<F: Field> ExtGroup<F> {
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cocycles(&self) -> &Subspace<F> {
        self.quotient.sup()
    }

    pub fn coboundaries(&self) -> &Subspace<F> {
        self.quotient.sub()
    }

    pub fn quotient(&self) -> &Subquotient<F> {
        &self.quotient
    }

    /// Cocycles whose classes form the chosen basis, one per row.
    pub fn representatives(&self) -> Matrix<F> {
        self.quotient.lift().transpose()
    }
}

/// `Ext^p_A(M, V)` where `res` resolves `M`.
pub fn ext<F: Field>(res: &FreeResolution<F>, v: &GammaModule<F>, p: usize) -> Result<ExtGroup<F>> {
    if res.length() < p + 1 {
        return Err(Error::ResolutionTooShort {
            length: res.length(),
            degree: p,
        });
    }
    if res.group() != v.group() {
        return Err(Error::DimensionMismatch("module and resolution are over different groups".into()));
    }
    CochainComplex::hom(res, v).cohomology(p)
}

/// The map `Ext^p(M', V) → Ext^p(M, V)` induced by a module map `M → M'`
/// whose degree-`p` chain lift is `f_p : F_p → F'_p`.
pub fn induced_on_ext<F: Field>(
    v: &GammaModule<F>,
    f_p: &Matrix<F>,
    src: &FreeResolution<F>,
    tgt: &FreeResolution<F>,
    p: usize,
) -> Result<Matrix<F>> {
    let src_ext = ext(src, v, p)?;
    let tgt_ext = ext(tgt, v, p)?;
    let pb = pullback(v, f_p, src.rank(p), tgt.rank(p));
    Ok(src_ext.quotient().proj().mul(&pb).mul(tgt_ext.quotient().lift()))
}

/// Higher cohomology `H_q^p(Γ, Σ, V) = Ext^p_A(A/J_q, V)` over a fixed
/// group, field and Σ, sharing resolutions through a cache.
#[derive(Debug)]
pub struct HigherCohomology<F: Field> {
    algebra: GroupAlgebra<F>,
    sigma: NormalSubgroup,
    filtration: IdealFiltration<F>,
    regular: GammaModule<F>,
    cache: Arc<ResolutionCache<F>>,
    order: CandidateOrder,
}

impl<F: Field> HigherCohomology<F> {
    /// Prepares the filtration through `J_{q_max + 1}`.
    pub fn new(group: Arc<FiniteGroup>, field: F, sigma: NormalSubgroup, q_max: usize) -> Result<Self> {
        Self::with_cache(group, field, sigma, q_max, Arc::new(ResolutionCache::new()), CandidateOrder::Canonical)
    }

    pub fn with_cache(
        group: Arc<FiniteGroup>,
        field: F,
        sigma: NormalSubgroup,
        q_max: usize,
        cache: Arc<ResolutionCache<F>>,
        order: CandidateOrder,
    ) -> Result<Self> {
        let algebra = GroupAlgebra::new(group, field);
        let filtration = IdealFiltration::new(&algebra, &sigma, Some(q_max + 1))?;
        let regular = GammaModule::regular(&algebra);
        Ok(HigherCohomology {
            algebra,
            sigma,
            filtration,
            regular,
            cache,
            order,
        })
    }

    pub fn algebra(&self) -> &GroupAlgebra<F> {
        &self.algebra
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.algebra.group()
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn sigma(&self) -> &NormalSubgroup {
        &self.sigma
    }

    pub fn filtration(&self) -> &IdealFiltration<F> {
        &self.filtration
    }

    pub fn cache(&self) -> &Arc<ResolutionCache<F>> {
        &self.cache
    }

    /// `J_q`, valid for every `q ≥ 1`.
    pub fn j(&self, q: usize) -> Result<&Subspace<F>> {
        if q == 0 {
            return Err(Error::FiltrationRange {
                q,
                len: self.filtration.len(),
            });
        }
        Ok(self.filtration.j_stable(q))
    }

    /// `N(q) = dim J_q/J_{q+1}`, valid for every `q ≥ 1`.
    pub fn n(&self, q: usize) -> Result<usize> {
        Ok(self.j(q)?.dim() - self.j(q + 1)?.dim())
    }

    /// `A/J_q` in complement coordinates, with the coordinate maps from `A`.
    pub fn quotient(&self, q: usize) -> Result<(GammaModule<F>, Subquotient<F>)> {
        let whole = Subspace::whole(self.field(), self.algebra.dim());
        self.regular.subquotient(self.j(q)?, &whole)
    }

    /// `J_q/J_{q+1}` in complement coordinates.
    pub fn layer(&self, q: usize) -> Result<(GammaModule<F>, Subquotient<F>)> {
        self.regular.subquotient(self.j(q + 1)?, self.j(q)?)
    }

    fn key(&self, q: usize, module: ResolvedModule) -> ResolutionKey {
        let group = self.group();
        ResolutionKey {
            generators: group.generators().iter().map(|&g| group.element(g).images().to_vec()).collect(),
            sigma: self.sigma.members().to_vec(),
            // past stabilization the module no longer changes
            q: q.min(self.filtration.stabilization_q()),
            field: self.field().spec(),
            module,
            order: self.order,
        }
    }

    /// A resolution of `A/J_q` (or of `J_q/J_{q+1}`) of length at least `length`.
    pub fn resolution(&self, module: ResolvedModule, q: usize, length: usize) -> Result<Arc<FreeResolution<F>>> {
        let key = self.key(q, module);
        self.cache.get_or_build(key, length, |l| {
            let (m, _) = match module {
                ResolvedModule::Quotient => self.quotient(q)?,
                ResolvedModule::Layer => self.layer(q)?,
            };
            FreeResolution::new(&m, l, self.order)
        })
    }

    /// `H_q^p(Γ, Σ, V)`.
    pub fn cohomology(&self, v: &GammaModule<F>, q: usize, p: usize) -> Result<ExtGroup<F>> {
        let res = self.resolution(ResolvedModule::Quotient, q, p + 1)?;
        ext(&res, v, p)
    }

    /// `Ext^p_A(J_q/J_{q+1}, V)`.
    pub fn layer_ext(&self, v: &GammaModule<F>, q: usize, p: usize) -> Result<ExtGroup<F>> {
        let res = self.resolution(ResolvedModule::Layer, q, p + 1)?;
        ext(&res, v, p)
    }
}

/// One-shot `H_q^p(Γ, Σ, V)`.
pub fn higher_cohomology<F: Field>(
    sigma: &NormalSubgroup,
    v: &GammaModule<F>,
    q: usize,
    p: usize,
) -> Result<ExtGroup<F>> {
    let engine = HigherCohomology::new(v.group().clone(), v.field().clone(), sigma.clone(), q)?;
    engine.cohomology(v, q, p)
}

/// Default cap on the number of coboundary rows the cochain oracle will
/// eliminate.
pub const BAR_ORACLE_BUDGET: usize = 200_000;

/// `dim H^p(Γ, V)` from inhomogeneous cochains `C^p = maps(Γ^p, V)` with
/// `(δφ)(g_1,…,g_{p+1}) = g_1 φ(g_2,…) + Σ (−1)^i φ(…, g_i g_{i+1}, …)
/// + (−1)^{p+1} φ(g_1,…,g_p)`.
///
/// Uses only the action matrices and row elimination.
pub fn bar_oracle<F: Field>(v: &GammaModule<F>, p: usize, budget: usize) -> Result<usize> {
    if p > 3 {
        return Err(Error::BudgetExceeded(format!("cochain oracle supports p ≤ 3, got {p}")));
    }
    let n = v.group().order();
    let d = v.dim();
    let rows = n.pow(p as u32 + 1) * d;
    if rows > budget {
        return Err(Error::BudgetExceeded(format!(
            "{rows} coboundary rows in degree {p} exceed the budget of {budget}"
        )));
    }
    let cochains = n.pow(p as u32) * d;
    let rank_here = coboundary_rank(v, p);
    let rank_before = if p == 0 { 0 } else { coboundary_rank(v, p - 1) };
    Ok(cochains - rank_here - rank_before)
}

/// Rank of `δ^p : C^p → C^{p+1}`, streaming one row per output coordinate.
fn coboundary_rank<F: Field>(v: &GammaModule<F>, p: usize) -> usize {
    let group = v.group();
    let field = v.field();
    let n = group.order();
    let d = v.dim();
    let cols = n.pow(p as u32) * d;
    let mut echelon = EchelonBuilder::new(field, cols);
    let one = field.one();
    let minus_one = field.neg(&one);
    let sign = |i: usize| if i % 2 == 0 { one.clone() } else { minus_one.clone() };
    // tuple (t_0, …, t_{p-1}) has index Σ t_k n^{p-1-k}
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * n + x);

    let mut tuple = vec![0usize; p + 1];
    loop {
        for k in 0..d {
            let mut row = vec![field.zero(); cols];
            let mut bump = |col: usize, c: &F::Elem| {
                row[col] = field.add(&row[col], c);
            };
            // g_1 · φ(g_2, …, g_{p+1}) contributes ρ(g_1)[k][l] at φ(tail)_l
            let tail = encode(&tuple[1..]);
            let act = v.action(tuple[0]);
            for l in 0..d {
                let c = act.get(k, l);
                if !field.is_zero(c) {
                    bump(tail * d + l, c);
                }
            }
            for i in 1..=p {
                let mut merged = Vec::with_capacity(p);
                merged.extend_from_slice(&tuple[..i - 1]);
                merged.push(group.mul(tuple[i - 1], tuple[i]));
                merged.extend_from_slice(&tuple[i + 1..]);
                bump(encode(&merged) * d + k, &sign(i));
            }
            bump(encode(&tuple[..p]) * d + k, &sign(p + 1));
            echelon.insert(row);
            if echelon.rank() == cols {
                return cols;
            }
        }
        // odometer over Γ^{p+1}
        let mut pos = p + 1;
        loop {
            if pos == 0 {
                return echelon.rank();
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}
