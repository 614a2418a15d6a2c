//! Finite permutation groups with canonical element order, and normal subgroups.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default bound on the group order accepted by [`FiniteGroup::close_generators`].
pub const DEFAULT_ORDER_CAP: usize = 24;

/// A bijection of `{0, …, n−1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// True for odd permutations.
    pub fn is_odd(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }
}

/// A finite group given by permutation generators.
///
/// Elements are enumerated breadth-first from the identity, multiplying on
/// the right by the generators in input order. The identity is index 0 and
/// the multiplication table uses `mult(a, b) = a ∘ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mult: Vec<usize>,
    inv: Vec<usize>,
    /// For each non-identity element, `(parent, generator position)` with
    /// `element = parent · generators[position]`.
    word: Vec<Option<(usize, usize)>>,
}

impl FiniteGroup {
    pub fn close_generators(gens: &[Permutation], order_cap: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.degree());
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if order_cap == 0 {
            return Err(Error::OrderCapExceeded { cap: 0 });
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut word = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (pos, g) in gens.iter().enumerate() {
                let prod = elements[k].compose(g);
                if index.contains_key(&prod) {
                    continue;
                }
                if elements.len() == order_cap {
                    return Err(Error::OrderCapExceeded { cap: order_cap });
                }
                index.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
                word.push(Some((k, pos)));
            }
        }
        let n = elements.len();
        let mut mult = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mult.push(index[&a.compose(b)]);
            }
        }
        let inv = elements.iter().map(|e| index[&e.inverse()]).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
            mult,
            inv,
            word,
        })
    }

    pub fn trivial() -> Self {
        Self::close_generators(&[], 1).expect("trivial group")
    }

    /// Cyclic group of order `n` acting on `n` points.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rot = Permutation((0..n).map(|i| (i + 1) % n).collect());
        Self::close_generators(&[rot], n).expect("cyclic group")
    }

    /// Symmetric group on `n` points, generated by an `n`-cycle and a transposition.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::trivial();
        }
        let cycle = Permutation((0..n).map(|i| (i + 1) % n).collect());
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let order = (1..=n).product();
        Self::close_generators(&[cycle, Permutation(t)], order).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Element indices of the generators, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The breadth-first word of an element: `element = parent · generators[pos]`.
    pub fn word(&self, a: usize) -> Option<(usize, usize)> {
        self.word[a]
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: a,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Closure of the given elements under multiplication.
    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for &s in gens {
                let m = self.mul(k, s);
                if !member[m] {
                    member[m] = true;
                    queue.push_back(m);
                }
            }
        }
        member
    }

    /// Dimension of `Hom(Γ, R⁺)` for a field of the given characteristic.
    ///
    /// In characteristic 0 this is 0 for every finite group. In characteristic
    /// `p` it is the rank of the largest elementary abelian `p`-quotient
    /// `Γ / Γ'Γ^p`, found by closing commutators and `p`-th powers.
    pub fn additive_character_rank(&self, characteristic: u64) -> usize {
        if characteristic == 0 {
            return 0;
        }
        let p = characteristic as usize;
        let n = self.order();
        let mut verbal = Vec::new();
        for a in 0..n {
            let mut pow = 0;
            for _ in 0..p {
                pow = self.mul(pow, a);
            }
            verbal.push(pow);
            for b in 0..n {
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                verbal.push(self.mul(ab, self.inv(ba)));
            }
        }
        verbal.sort_unstable();
        verbal.dedup();
        let sub_order = self.closure(&verbal).iter().filter(|&&m| m).count();
        let mut index = n / sub_order;
        let mut rank = 0;
        while index > 1 {
            debug_assert_eq!(index % p, 0);
            index /= p;
            rank += 1;
        }
        rank
    }
}

/// A normal subgroup Σ ⊴ Γ, stored as sorted element indices of Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl NormalSubgroup {
    /// Closes the chosen elements to a subgroup and checks normality.
    ///
    /// On failure the error carries a pair `(γ, σ)` with `γσγ⁻¹ ∉ Σ`.
    pub fn closure(group: &FiniteGroup, gen_indices: &[usize]) -> Result<Self> {
        for &g in gen_indices {
            group.check_index(g)?;
        }
        let member = group.closure(gen_indices);
        for gamma in 0..group.order() {
            for sigma in (0..group.order()).filter(|&s| member[s]) {
                let conj = group.mul(group.mul(gamma, sigma), group.inv(gamma));
                if !member[conj] {
                    return Err(Error::NotNormal { gamma, sigma });
                }
            }
        }
        let mut generators = gen_indices.to_vec();
        generators.sort_unstable();
        generators.dedup();
        generators.retain(|&g| g != 0);
        Ok(NormalSubgroup {
            members: (0..group.order()).filter(|&s| member[s]).collect(),
            generators,
        })
    }

    pub fn trivial() -> Self {
        NormalSubgroup {
            members: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        let mut generators: Vec<usize> = group.generators().to_vec();
        generators.sort_unstable();
        generators.dedup();
        generators.retain(|&g| g != 0);
        NormalSubgroup {
            members: (0..group.order()).collect(),
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Non-identity generating elements, sorted.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}
