//! The Hopf algebra `k[Γ]` of a diagonalizable group and its comodules.
//!
//! A comodule over `k[Γ]` is the same thing as a `Γ`-graded vector space, so
//! comodules are stored as gradings: a set of basis keys with a weight each.
//! The coaction `m ↦ e_{deg m} ⊗ m` can be materialized as a [`CoactionTable`]
//! when the axioms themselves need checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, CharacterLattice, SubgroupPresentation};
use crate::linalg::Matrix;
use crate::polyalg::{homogeneous_components, is_homogeneous, Grading, GroebnerConfig, Ideal, Monomial, Poly};
use crate::scalar::{Field, Scalar};

/// A finite linear combination of basis keys.
pub type Element<K> = BTreeMap<K, Scalar>;

fn add_into<K: Ord>(acc: &mut Element<K>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// A graded comodule with a distinguished homogeneous basis.
pub trait Comodule {
    type Key: Clone + Ord + Debug;

    fn lattice(&self) -> &CharacterLattice;

    /// Weight of a basis element.
    fn weight(&self, key: &Self::Key) -> Character;

    /// Whether `key` names a basis element of this comodule.
    fn contains(&self, key: &Self::Key) -> bool;
}

/// Free comodule on basis `0..n` with the given weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComodule {
    lattice: CharacterLattice,
    weights: Vec<Character>,
}

impl FreeComodule {
    pub fn new(lattice: CharacterLattice, weights: Vec<Character>) -> Result<Self> {
        for w in &weights {
            lattice.check(w)?;
        }
        Ok(FreeComodule { lattice, weights })
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Indices of basis vectors fixed by `C`.
    pub fn fixed_basis(&self, sub: &SubgroupPresentation) -> Result<Vec<usize>> {
        check_ambient(&self.lattice, sub)?;
        let mut out = Vec::new();
        for (i, w) in self.weights.iter().enumerate() {
            if restrict(w, sub)?.is_zero() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `F^C` as a free comodule with its residual `Γ`-grading.
    pub fn fixed_submodule(&self, sub: &SubgroupPresentation) -> Result<FreeComodule> {
        let idx = self.fixed_basis(sub)?;
        Ok(self.select(&idx))
    }

    /// `F / F^C`, spanned by the images of the non-fixed basis vectors.
    pub fn quotient_by_fixed(&self, sub: &SubgroupPresentation) -> Result<FreeComodule> {
        let fixed: BTreeSet<usize> = self.fixed_basis(sub)?.into_iter().collect();
        let rest: Vec<usize> = (0..self.rank()).filter(|i| !fixed.contains(i)).collect();
        Ok(self.select(&rest))
    }

    fn select(&self, idx: &[usize]) -> FreeComodule {
        FreeComodule {
            lattice: self.lattice.clone(),
            weights: idx.iter().map(|&i| self.weights[i].clone()).collect(),
        }
    }

    /// Tensor product with basis `(i, j) ↦ i·other.rank() + j`.
    pub fn tensor(&self, other: &FreeComodule) -> Result<FreeComodule> {
        same_lattice(&self.lattice, &other.lattice)?;
        let mut weights = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.weights {
            for b in &other.weights {
                weights.push(self.lattice.add(a, b));
            }
        }
        Ok(FreeComodule {
            lattice: self.lattice.clone(),
            weights,
        })
    }

    pub fn coaction_table(&self, field: Field) -> CoactionTable<usize> {
        coaction_table(self, (0..self.rank()).collect(), field)
    }
}

impl Comodule for FreeComodule {
    type Key = usize;

    fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    fn weight(&self, key: &usize) -> Character {
        self.weights[*key].clone()
    }

    fn contains(&self, key: &usize) -> bool {
        *key < self.weights.len()
    }
}

fn same_lattice(a: &CharacterLattice, b: &CharacterLattice) -> Result<()> {
    if a != b {
        return Err(Error::LatticeMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

fn check_ambient(lattice: &CharacterLattice, sub: &SubgroupPresentation) -> Result<()> {
    if sub.ambient() != lattice {
        return Err(Error::LatticeMismatch(format!(
            "subgroup of {} applied to a comodule over {lattice}",
            sub.ambient()
        )));
    }
    Ok(())
}

/// The group algebra `k[Γ]` with its Hopf structure. As a comodule over
/// itself (the regular comodule) the basis is `{e_γ}` with `e_γ` of weight `γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    lattice: CharacterLattice,
    field: Field,
}

impl GroupAlgebra {
    pub fn new(lattice: CharacterLattice, field: Field) -> Self {
        GroupAlgebra { lattice, field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self, g: &Character) -> Element<Character> {
        let mut e = Element::new();
        e.insert(g.clone(), self.field.one());
        e
    }

    pub fn unit(&self) -> Element<Character> {
        self.basis(&self.lattice.zero())
    }

    pub fn mul(&self, a: &Element<Character>, b: &Element<Character>) -> Element<Character> {
        let mut out = Element::new();
        for (g, x) in a {
            for (h, y) in b {
                add_into(&mut out, self.lattice.add(g, h), x * y);
            }
        }
        out
    }

    pub fn counit(&self, a: &Element<Character>) -> Scalar {
        a.values().fold(self.field.zero(), |acc, c| &acc + c)
    }

    pub fn antipode(&self, a: &Element<Character>) -> Element<Character> {
        a.iter().map(|(g, c)| (self.lattice.neg(g), c.clone())).collect()
    }

    pub fn coproduct(&self, a: &Element<Character>) -> Element<(Character, Character)> {
        a.iter().map(|(g, c)| ((g.clone(), g.clone()), c.clone())).collect()
    }

    /// Image in `k[Γ_C]` under the quotient `k[Γ] → k[Γ_C]`.
    pub fn project(&self, a: &Element<Character>, sub: &SubgroupPresentation) -> Result<Element<Character>> {
        check_ambient(&self.lattice, sub)?;
        let mut out = Element::new();
        for (g, c) in a {
            add_into(&mut out, restrict(g, sub)?, c.clone());
        }
        Ok(out)
    }

    pub fn coaction_table(&self, keys: Vec<Character>) -> CoactionTable<Character> {
        coaction_table(self, keys, self.field)
    }
}

impl Comodule for GroupAlgebra {
    type Key = Character;

    fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    fn weight(&self, key: &Character) -> Character {
        key.clone()
    }

    fn contains(&self, key: &Character) -> bool {
        self.lattice.contains(key)
    }
}

/// A quotient `k[x₁…x_n]/I` graded by the variable weights. The monomials
/// form a spanning set of homogeneous elements; the coaction descends to the
/// quotient exactly when `I` is homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraComodule {
    grading: Grading,
    ideal: Ideal,
}

impl AlgebraComodule {
    pub fn new(grading: Grading, ideal: Ideal) -> Result<Self> {
        if grading.nvars() != ideal.nvars() {
            return Err(Error::DimensionMismatch {
                expected: grading.nvars(),
                found: ideal.nvars(),
            });
        }
        Ok(AlgebraComodule { grading, ideal })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The comodule axioms on the quotient. They hold on monomials of the
    /// polynomial ring for any grading; on the quotient they additionally need
    /// the coaction to be well defined, i.e. `I` homogeneous.
    pub fn check_axioms(&self, config: &GroebnerConfig) -> Result<bool> {
        let n = self.grading.nvars();
        let keys: Vec<Monomial> = (0..n).map(|i| Monomial::var(n, i)).collect();
        let table = coaction_table(self, keys, self.ideal.field());
        Ok(check_comodule_axioms(&table) && is_homogeneous(&self.ideal, &self.grading, config)?)
    }

    /// The `C`-degree-0 part of `f`.
    pub fn reynolds(&self, f: &Poly, sub: &SubgroupPresentation) -> Result<Poly> {
        let parts = homogeneous_components(f, &self.grading, sub)?;
        Ok(parts
            .get(&sub.quotient().zero())
            .cloned()
            .unwrap_or_else(|| Poly::zero(f.field(), f.nvars())))
    }
}

impl Comodule for AlgebraComodule {
    type Key = Monomial;

    fn lattice(&self) -> &CharacterLattice {
        self.grading.lattice()
    }

    fn weight(&self, key: &Monomial) -> Character {
        self.grading.degree(key)
    }

    fn contains(&self, key: &Monomial) -> bool {
        key.exponents().len() == self.grading.nvars()
    }
}

/// The fixed subcomodule `M^C`: basis elements of `M` whose weight is trivial
/// on `C`, keeping their `Γ`-weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed<M> {
    inner: M,
    sub: SubgroupPresentation,
}

impl<M: Comodule> Fixed<M> {
    pub fn inner(&self) -> &M {
        &self.inner
    }

    pub fn subgroup(&self) -> &SubgroupPresentation {
        &self.sub
    }
}

impl<M: Comodule> Comodule for Fixed<M> {
    type Key = M::Key;

    fn lattice(&self) -> &CharacterLattice {
        self.inner.lattice()
    }

    fn weight(&self, key: &M::Key) -> Character {
        self.inner.weight(key)
    }

    fn contains(&self, key: &M::Key) -> bool {
        self.inner.contains(key)
            && restrict(&self.inner.weight(key), &self.sub).is_ok_and(|g| g.is_zero())
    }
}

pub fn fixed_part<M: Comodule + Clone>(m: &M, sub: &SubgroupPresentation) -> Result<Fixed<M>> {
    check_ambient(m.lattice(), sub)?;
    Ok(Fixed {
        inner: m.clone(),
        sub: sub.clone(),
    })
}

/// Projection onto the `C`-degree-0 part: the unique retraction onto `M^C`.
pub fn reynolds<M: Comodule>(
    m: &M,
    x: &Element<M::Key>,
    sub: &SubgroupPresentation,
) -> Result<Element<M::Key>> {
    check_ambient(m.lattice(), sub)?;
    let mut out = Element::new();
    for (k, c) in x {
        if !m.contains(k) {
            return Err(Error::invalid(format!("{k:?} is not a basis element")));
        }
        if restrict(&m.weight(k), sub)?.is_zero() {
            out.insert(k.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `M ⊗ N` with weights adding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<A, B> {
    left: A,
    right: B,
}

pub fn tensor<A: Comodule + Clone, B: Comodule + Clone>(a: &A, b: &B) -> Result<Tensor<A, B>> {
    same_lattice(a.lattice(), b.lattice())?;
    Ok(Tensor {
        left: a.clone(),
        right: b.clone(),
    })
}

impl<A: Comodule, B: Comodule> Comodule for Tensor<A, B> {
    type Key = (A::Key, B::Key);

    fn lattice(&self) -> &CharacterLattice {
        self.left.lattice()
    }

    fn weight(&self, key: &Self::Key) -> Character {
        self.left
            .lattice()
            .add(&self.left.weight(&key.0), &self.right.weight(&key.1))
    }

    fn contains(&self, key: &Self::Key) -> bool {
        self.left.contains(&key.0) && self.right.contains(&key.1)
    }
}

/// `γ_F(m) = e_{−deg m} ⊗ m` for a basis element `m`; lands in `(k[Γ] ⊗ F)^G`.
pub fn gamma<M: Comodule>(m: &M, key: &M::Key) -> (Character, M::Key) {
    (m.lattice().neg(&m.weight(key)), key.clone())
}

/// An explicit coaction `μ(m) ∈ k[Γ] ⊗ M` for each basis key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionTable<K: Ord> {
    pub lattice: CharacterLattice,
    pub field: Field,
    pub images: BTreeMap<K, Element<(Character, K)>>,
}

pub fn coaction_table<M: Comodule>(m: &M, keys: Vec<M::Key>, field: Field) -> CoactionTable<M::Key> {
    let images = keys
        .into_iter()
        .map(|k| {
            let mut img = Element::new();
            img.insert((m.weight(&k), k.clone()), field.one());
            (k, img)
        })
        .collect();
    CoactionTable {
        lattice: m.lattice().clone(),
        field,
        images,
    }
}

/// Counit law `(ε ⊗ id)∘μ = id` and coassociativity
/// `(id ⊗ μ)∘μ = (Δ ⊗ id)∘μ` on every basis key of the table.
pub fn check_comodule_axioms<K: Clone + Ord>(table: &CoactionTable<K>) -> bool {
    for (key, img) in &table.images {
        let mut counit: Element<K> = Element::new();
        for ((_, k), c) in img {
            add_into(&mut counit, k.clone(), c.clone());
        }
        let mut expected = Element::new();
        expected.insert(key.clone(), table.field.one());
        if counit != expected {
            return false;
        }

        let mut left: Element<(Character, Character, K)> = Element::new();
        let mut right: Element<(Character, Character, K)> = Element::new();
        for ((g, k), c) in img {
            let Some(inner) = table.images.get(k) else {
                return false;
            };
            for ((h, k2), d) in inner {
                add_into(&mut left, (g.clone(), h.clone(), k2.clone()), c * d);
            }
            add_into(&mut right, (g.clone(), g.clone(), k.clone()), c.clone());
        }
        if left != right {
            return false;
        }
    }
    true
}

/// The fixed part computed from its definition, as the kernel of
/// `1 ⊗ id − (π_C ⊗ id)∘μ : F → k[Γ_C] ⊗ F` on the span of `keys`.
pub fn equalizer_kernel<K: Clone + Ord>(
    table: &CoactionTable<K>,
    sub: &SubgroupPresentation,
) -> Result<Vec<Element<K>>> {
    check_ambient(&table.lattice, sub)?;
    let keys: Vec<K> = table.images.keys().cloned().collect();
    let one = sub.quotient().zero();
    let mut rows_index: BTreeMap<(Character, K), usize> = BTreeMap::new();
    let mut columns: Vec<Element<(Character, K)>> = Vec::new();
    for k in &keys {
        let mut col = Element::new();
        add_into(&mut col, (one.clone(), k.clone()), table.field.one());
        for ((g, k2), c) in &table.images[k] {
            add_into(&mut col, (restrict(g, sub)?, k2.clone()), -c);
        }
        for idx in col.keys() {
            let n = rows_index.len();
            rows_index.entry(idx.clone()).or_insert(n);
        }
        columns.push(col);
    }
    let mut m = Matrix::zeros(table.field, rows_index.len(), keys.len());
    for (j, col) in columns.iter().enumerate() {
        for (idx, c) in col {
            m.set(rows_index[idx], j, c.clone());
        }
    }
    Ok(m
        .kernel()
        .into_iter()
        .map(|v| {
            let mut e = Element::new();
            for (k, c) in keys.iter().zip(v) {
                add_into(&mut e, k.clone(), c);
            }
            e
        })
        .collect())
}

/// A degree-preserving linear map between free comodules; `matrix` has one
/// row per target basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: FreeComodule,
    target: FreeComodule,
    matrix: Matrix,
}

impl GradedMap {
    pub fn new(source: FreeComodule, target: FreeComodule, matrix: Matrix) -> Result<Self> {
        same_lattice(&source.lattice, &target.lattice)?;
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank() * source.rank(),
                found: matrix.nrows() * matrix.ncols(),
            });
        }
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                if !matrix.get(i, j).is_zero() && target.weights[i] != source.weights[j] {
                    return Err(Error::invalid(format!(
                        "entry ({i}, {j}) maps weight {} to weight {}",
                        source.weights[j], target.weights[i]
                    )));
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &FreeComodule {
        &self.source
    }

    pub fn target(&self) -> &FreeComodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element<usize>) -> Element<usize> {
        let field = self.matrix.field();
        let mut v = vec![field.zero(); self.source.rank()];
        for (k, c) in x {
            v[*k] = c.clone();
        }
        let mut out = Element::new();
        for (i, c) in self.matrix.apply(&v).into_iter().enumerate() {
            add_into(&mut out, i, c);
        }
        out
    }

    /// The induced map `f^C : F^C → G^C` in the fixed bases, together with
    /// those bases (as indices into the original bases).
    pub fn on_fixed(&self, sub: &SubgroupPresentation) -> Result<(GradedMap, Vec<usize>, Vec<usize>)> {
        let src = self.source.fixed_basis(sub)?;
        let tgt = self.target.fixed_basis(sub)?;
        let field = self.matrix.field();
        let rows = tgt
            .iter()
            .map(|&i| src.iter().map(|&j| self.matrix.get(i, j).clone()).collect())
            .collect();
        let m = Matrix::from_rows(field, src.len(), rows);
        let map = GradedMap::new(self.source.select(&src), self.target.select(&tgt), m)?;
        Ok((map, src, tgt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quotient_lattice;

    fn z() -> CharacterLattice {
        CharacterLattice::free(1)
    }

    fn ch(l: &CharacterLattice, a: i64) -> Character {
        l.character(&[a]).unwrap()
    }

    fn free(ws: &[i64]) -> FreeComodule {
        let l = z();
        FreeComodule::new(l.clone(), ws.iter().map(|&w| ch(&l, w)).collect()).unwrap()
    }

    fn mu(n: i64) -> SubgroupPresentation {
        let l = z();
        quotient_lattice(&l, &[ch(&l, n)]).unwrap()
    }

    #[test]
    fn regular_comodule_fixed_part_is_unit_line() {
        let l = z();
        let ka = GroupAlgebra::new(l.clone(), Field::Rational);
        let keys: Vec<Character> = (-3..=3).map(|a| ch(&l, a)).collect();
        let whole = SubgroupPresentation::whole(&l);
        let kernel = equalizer_kernel(&ka.coaction_table(keys.clone()), &whole).unwrap();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], ka.unit());
        let fixed = fixed_part(&ka, &whole).unwrap();
        let fixed_keys: Vec<_> = keys.iter().filter(|k| fixed.contains(k)).collect();
        assert_eq!(fixed_keys, vec![&l.zero()]);
    }

    #[test]
    fn fixed_part_examples() {
        let l = z();
        let whole = SubgroupPresentation::whole(&l);
        assert_eq!(free(&[1, 0, -1]).fixed_basis(&whole).unwrap(), vec![1]);
        assert_eq!(free(&[2, 1]).fixed_basis(&mu(2)).unwrap(), vec![0]);
    }

    #[test]
    fn reynolds_examples() {
        let l = z();
        let ka = GroupAlgebra::new(l.clone(), Field::Rational);
        let whole = SubgroupPresentation::whole(&l);
        let mut x = ka.unit();
        x.insert(ch(&l, 1), Field::Rational.one());
        assert_eq!(reynolds(&ka, &x, &whole).unwrap(), ka.unit());
        let e3 = ka.basis(&ch(&l, 3));
        assert_eq!(reynolds(&ka, &e3, &mu(3)).unwrap(), e3);
        let r = reynolds(&ka, &x, &whole).unwrap();
        assert_eq!(reynolds(&ka, &r, &whole).unwrap(), r);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(free(&[1]).tensor(&free(&[-1])).unwrap().weights(), free(&[0]).weights());
        assert_eq!(free(&[1, 2]).tensor(&free(&[0])).unwrap().weights(), free(&[1, 2]).weights());
        let t = free(&[1]).tensor(&free(&[1])).unwrap();
        assert_eq!(t.fixed_basis(&mu(2)).unwrap(), vec![0]);
        let generic = tensor(&free(&[1]), &free(&[1])).unwrap();
        assert_eq!(generic.weight(&(0, 0)), ch(&z(), 2));
    }

    #[test]
    fn hopf_axioms() {
        let l = CharacterLattice::new(1, vec![3]).unwrap();
        let ka = GroupAlgebra::new(l.clone(), Field::Rational);
        let g = l.character(&[2, 1]).unwrap();
        let h = l.character(&[-1, 2]).unwrap();
        assert_eq!(ka.mul(&ka.basis(&g), &ka.basis(&h)), ka.basis(&l.add(&g, &h)));
        assert_eq!(ka.counit(&ka.basis(&g)), Field::Rational.one());
        assert_eq!(ka.mul(&ka.basis(&g), &ka.antipode(&ka.basis(&g))), ka.unit());
        assert!(check_comodule_axioms(&ka.coaction_table(vec![g, h])));
    }

    #[test]
    fn broken_coaction_fails_axioms() {
        let l = z();
        let f = Field::Rational;
        let mut t = free(&[1, 0]).coaction_table(f);
        // μ(m₀) = e_1 ⊗ m₀ + e_2 ⊗ m₁ breaks the counit law
        t.images
            .get_mut(&0)
            .unwrap()
            .insert((ch(&l, 2), 1), f.one());
        assert!(!check_comodule_axioms(&t));
        assert!(check_comodule_axioms(&free(&[1, 0]).coaction_table(f)));
    }

    #[test]
    fn algebra_with_inhomogeneous_ideal_fails_axioms() {
        let l = z();
        let f = Field::Rational;
        let grading = Grading::new(l.clone(), vec![ch(&l, 1), ch(&l, 0)]).unwrap();
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let bad = AlgebraComodule::new(grading.clone(), Ideal::new(f, 2, vec![&x + &y]).unwrap()).unwrap();
        assert!(!bad.check_axioms(&GroebnerConfig::default()).unwrap());
        let good = AlgebraComodule::new(grading, Ideal::new(f, 2, vec![&x * &y]).unwrap()).unwrap();
        assert!(good.check_axioms(&GroebnerConfig::default()).unwrap());
        let whole = SubgroupPresentation::whole(&l);
        assert_eq!(good.reynolds(&(&x + &y), &whole).unwrap(), y);
    }

    #[test]
    fn lattice_mismatch_rejected() {
        let a = free(&[1]);
        let b = FreeComodule::new(CharacterLattice::free(2), vec![]).unwrap();
        assert!(a.tensor(&b).is_err());
        let sub = SubgroupPresentation::whole(&CharacterLattice::free(2));
        assert!(a.fixed_basis(&sub).is_err());
    }

    #[test]
    fn gamma_is_invariant() {
        let m = free(&[3, -2]);
        for k in 0..2 {
            let (g, key) = gamma(&m, &k);
            assert!(z().add(&g, &m.weight(&key)).is_zero());
        }
    }
}
