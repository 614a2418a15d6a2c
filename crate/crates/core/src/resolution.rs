//! Minimal-ish free resolutions of finite `A`-modules by greedy generator
//! selection, chain-map lifting, and a resolution cache.
//!
//! The free module `A^n` has basis index `j·|Γ| + h` for the element `h` in
//! the `j`-th summand; `g` acts by `e_{j,h} ↦ e_{j,gh}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::group::FiniteGroup;
use crate::matrix::{EchelonBuilder, Matrix};
use crate::module::GammaModule;

/// `g·v` in the free module of rank `v.len() / |Γ|`.
pub fn free_act<F: Field>(group: &FiniteGroup, g: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    let n = group.order();
    let mut out = v.to_vec();
    for (j, chunk) in v.chunks(n).enumerate() {
        for (h, x) in chunk.iter().enumerate() {
            out[j * n + group.mul(g, h)] = x.clone();
        }
    }
    out
}

/// The `A`-linear map out of a free module sending the `j`-th generator to
/// `images[j]`: column `(j, g)` is `g·images[j]`.
pub fn extend_a_linear<F: Field>(
    field: &F,
    order: usize,
    target_dim: usize,
    images: &[Vec<F::Elem>],
    act: impl Fn(usize, &[F::Elem]) -> Vec<F::Elem>,
) -> Matrix<F> {
    let mut cols = Vec::with_capacity(images.len() * order);
    for x in images {
        for g in 0..order {
            cols.push(act(g, x));
        }
    }
    Matrix::from_columns(field, target_dim, &cols)
}

/// Order in which candidate generators are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CandidateOrder {
    #[default]
    Canonical,
    Reversed,
}

/// Picks candidates not yet in the `A`-span of the earlier picks until the
/// span reaches `target_dim`.
fn greedy_generators<F: Field>(
    field: &F,
    ambient: usize,
    order: usize,
    candidates: Vec<Vec<F::Elem>>,
    target_dim: usize,
    act: &impl Fn(usize, &[F::Elem]) -> Vec<F::Elem>,
) -> Result<Vec<Vec<F::Elem>>> {
    let mut span = EchelonBuilder::new(field, ambient);
    let mut chosen = Vec::new();
    for c in candidates {
        if span.rank() == target_dim {
            break;
        }
        if span.contains(&c) {
            continue;
        }
        for g in 0..order {
            span.insert(act(g, &c));
        }
        chosen.push(c);
    }
    if span.rank() != target_dim {
        return Err(Error::Certification(format!(
            "generators span dimension {} of {target_dim}",
            span.rank()
        )));
    }
    Ok(chosen)
}

/// `… → F_2 → F_1 → F_0 → M → 0` with `F_i = A^{n_i}`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    group: Arc<FiniteGroup>,
    field: F,
    target: GammaModule<F>,
    ranks: Vec<usize>,
    augmentation: Matrix<F>,
    /// `boundaries[i-1] = d_i : F_i → F_{i-1}`.
    boundaries: Vec<Matrix<F>>,
}

impl<F: Field> FreeResolution<F> {
    /// Resolves `target` up to `F_length`.
    pub fn new(target: &GammaModule<F>, length: usize, order: CandidateOrder) -> Result<Self> {
        let group = target.group().clone();
        let field = target.field().clone();
        let n = group.order();
        let dim = target.dim();

        let mut basis: Vec<Vec<F::Elem>> = (0..dim)
            .map(|i| (0..dim).map(|k| if k == i { field.one() } else { field.zero() }).collect())
            .collect();
        if order == CandidateOrder::Reversed {
            basis.reverse();
        }
        let act_m = |g: usize, v: &[F::Elem]| target.action(g).mul_vec(v);
        let gens = greedy_generators(&field, dim, n, basis, dim, &act_m)?;
        let augmentation = extend_a_linear(&field, n, dim, &gens, act_m);
        let mut ranks = vec![gens.len()];
        let mut boundaries: Vec<Matrix<F>> = Vec::with_capacity(length);

        let act_free = |g: usize, v: &[F::Elem]| free_act::<F>(&group, g, v);
        for _ in 1..=length {
            let prev = boundaries.last().unwrap_or(&augmentation);
            let ambient = prev.cols();
            let kernel = prev.kernel();
            let mut candidates = kernel.basis_vectors();
            if order == CandidateOrder::Reversed {
                candidates.reverse();
            }
            let gens = greedy_generators(&field, ambient, n, candidates, kernel.dim(), &act_free)?;
            let d = extend_a_linear(&field, n, ambient, &gens, act_free);
            if !prev.mul(&d).is_zero() {
                return Err(Error::Certification("consecutive boundaries do not compose to zero".into()));
            }
            ranks.push(gens.len());
            boundaries.push(d);
        }
        Ok(FreeResolution {
            group,
            field,
            target: target.clone(),
            ranks,
            augmentation,
            boundaries,
        })
    }

    /// Assembles a resolution from explicit maps; callers certify it.
    pub(crate) fn from_parts(
        target: &GammaModule<F>,
        ranks: Vec<usize>,
        augmentation: Matrix<F>,
        boundaries: Vec<Matrix<F>>,
    ) -> Self {
        debug_assert_eq!(ranks.len(), boundaries.len() + 1);
        FreeResolution {
            group: target.group().clone(),
            field: target.field().clone(),
            target: target.clone(),
            ranks,
            augmentation,
            boundaries,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn target(&self) -> &GammaModule<F> {
        &self.target
    }

    /// Index of the last free module.
    pub fn length(&self) -> usize {
        self.boundaries.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// `dim_R F_i`.
    pub fn free_dim(&self, i: usize) -> usize {
        self.ranks[i] * self.group.order()
    }

    pub fn augmentation(&self) -> &Matrix<F> {
        &self.augmentation
    }

    /// `d_i : F_i → F_{i-1}` for `1 ≤ i ≤ length`.
    pub fn boundary(&self, i: usize) -> &Matrix<F> {
        assert!(i >= 1 && i <= self.length(), "boundary index {i} out of range");
        &self.boundaries[i - 1]
    }

    /// Recomputes exactness from scratch: `ε` onto, `ε∘d_1 = 0`,
    /// `d_i∘d_{i+1} = 0` and `rank d_{i+1} = dim ker d_i`, plus equivariance
    /// of every map on the generators.
    pub fn certify(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Certification(what));
        if self.augmentation.rank() != self.target.dim() {
            return fail("augmentation is not onto".into());
        }
        for &g in self.group.generators() {
            for j in 0..self.augmentation.cols() {
                let e = unit::<F>(&self.field, self.augmentation.cols(), j);
                let lhs = self.augmentation.mul_vec(&free_act::<F>(&self.group, g, &e));
                let rhs = self.target.action(g).mul_vec(&self.augmentation.column(j));
                if lhs != rhs {
                    return fail("augmentation is not equivariant".into());
                }
            }
        }
        let mut prev = &self.augmentation;
        for (i, d) in self.boundaries.iter().enumerate() {
            if !prev.mul(d).is_zero() {
                return fail(format!("d_{} ∘ d_{} ≠ 0", i, i + 1));
            }
            if d.rank() != prev.kernel().dim() {
                return fail(format!("not exact at F_{i}"));
            }
            for &g in self.group.generators() {
                for j in 0..d.cols() {
                    let e = unit::<F>(&self.field, d.cols(), j);
                    let lhs = d.mul_vec(&free_act::<F>(&self.group, g, &e));
                    let rhs = free_act::<F>(&self.group, g, &d.column(j));
                    if lhs != rhs {
                        return fail(format!("d_{} is not equivariant", i + 1));
                    }
                }
            }
            prev = d;
        }
        Ok(())
    }
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    (0..n).map(|k| if k == i { field.one() } else { field.zero() }).collect()
}

/// Lifts a module map `f : src.target → tgt.target` to chain maps
/// `f_i : F_i → F'_i` for `0 ≤ i ≤ upto`, certifying every square.
pub fn lift_chain_map<F: Field>(
    f: &Matrix<F>,
    src: &FreeResolution<F>,
    tgt: &FreeResolution<F>,
    upto: usize,
) -> Result<Vec<Matrix<F>>> {
    if upto > src.length() || upto > tgt.length() {
        return Err(Error::ResolutionTooShort {
            length: src.length().min(tgt.length()),
            degree: upto,
        });
    }
    let field = src.field();
    let group = src.group();
    let n = group.order();
    let act = |g: usize, v: &[F::Elem]| free_act::<F>(group, g, v);
    let mut maps: Vec<Matrix<F>> = Vec::with_capacity(upto + 1);
    for i in 0..=upto {
        // `above` is the composite into the target of the previous square
        let (src_map, tgt_map, above) = if i == 0 {
            (src.augmentation(), tgt.augmentation(), f)
        } else {
            (src.boundary(i), tgt.boundary(i), &maps[i - 1])
        };
        let gen_cols: Vec<usize> = (0..src.rank(i)).map(|j| j * n).collect();
        let rhs = above.mul(&src_map.select_cols(&gen_cols));
        let x = tgt_map
            .solve(&rhs)
            .ok_or_else(|| Error::Certification(format!("chain map does not lift in degree {i}")))?;
        let images: Vec<Vec<F::Elem>> = (0..x.cols()).map(|j| x.column(j)).collect();
        let fi = extend_a_linear(field, n, tgt.free_dim(i), &images, act);
        if tgt_map.mul(&fi) != above.mul(src_map) {
            return Err(Error::Certification(format!("chain map square fails in degree {i}")));
        }
        maps.push(fi);
    }
    Ok(maps)
}

/// Which quotient of the group algebra a cached resolution resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResolvedModule {
    /// `A / J_q`.
    Quotient,
    /// `J_q / J_{q+1}`.
    Layer,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionKey {
    pub generators: Vec<Vec<usize>>,
    pub sigma: Vec<usize>,
    pub q: usize,
    pub field: FieldSpec,
    pub module: ResolvedModule,
    pub order: CandidateOrder,
}

/// Resolutions keyed by group, Σ, `q`, field and module. A cached
/// resolution serves any request up to its length.
#[derive(Debug)]
pub struct ResolutionCache<F: Field> {
    map: Mutex<HashMap<ResolutionKey, Arc<FreeResolution<F>>>>,
}

impl<F: Field> Default for ResolutionCache<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> ResolutionCache<F> {
    pub fn new() -> Self {
        ResolutionCache {
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_or_build(
        &self,
        key: ResolutionKey,
        length: usize,
        build: impl FnOnce(usize) -> Result<FreeResolution<F>>,
    ) -> Result<Arc<FreeResolution<F>>> {
        if let Some(r) = self.map.lock().expect("cache lock").get(&key) {
            if r.length() >= length {
                return Ok(r.clone());
            }
        }
        // built outside the lock; a concurrent duplicate is harmless
        let r = Arc::new(build(length)?);
        let mut map = self.map.lock().expect("cache lock");
        let entry = map.entry(key).or_insert_with(|| r.clone());
        if entry.length() < r.length() {
            *entry = r.clone();
        }
        Ok(entry.clone())
    }
}
