//! Finitely generated abelian groups, used as character lattices of
//! diagonalizable groups, together with Smith normal form over the integers.
//!
//! A lattice `Γ = ℤ^r ⊕ ℤ/m₁ ⊕ … ⊕ ℤ/m_s` is stored in invariant-factor form
//! (`m₁ | m₂ | …`, every `mᵢ ≥ 2`), so two lattices are isomorphic exactly
//! when they compare equal. A closed subgroup `C` of `D(Γ)` is described
//! dually by the restriction map `Γ → Γ_C` onto its character group.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = factor * &self[(source, j)];
            self[(target, j)] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = factor * &self[(i, source)];
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `d₁ | d₂ | …`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &pivot);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &pivot);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            if let Some(i) = offender {
                let one = BigInt::one();
                d.add_row(t, i, &one);
                u.add_row(t, i, &one);
                continue;
            }
            if pivot.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    SmithForm { u, d, v }
}

/// `ℤ^rank ⊕ ⊕ ℤ/mᵢ` in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterLattice {
    rank: usize,
    torsion: Vec<BigInt>,
}

/// An element of a [`CharacterLattice`]: free coordinates followed by torsion
/// coordinates reduced into `[0, mᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl Character {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = &BigInt> {
        self.free.iter().chain(&self.torsion)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl CharacterLattice {
    /// Lattice with the given free rank and invariant factors. The orders must
    /// already form a divisibility chain of integers `≥ 2`.
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self> {
        Self::from_big(rank, torsion.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, m) in torsion.iter().enumerate() {
            if *m < BigInt::from(2) {
                return Err(Error::invalid(format!("torsion order {m} must be at least 2")));
            }
            if i > 0 && !m.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::invalid(format!(
                    "torsion orders {} do not form a divisibility chain",
                    join(&torsion)
                )));
            }
        }
        Ok(CharacterLattice { rank, torsion })
    }

    /// Canonical form of `ℤ^rank ⊕ ⊕ ℤ/orders`, for arbitrary positive orders.
    pub fn canonical(rank: usize, orders: &[i64]) -> Result<Self> {
        let free = Self::free(rank + orders.len());
        let rels: Vec<Character> = orders
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut c = vec![0; rank + orders.len()];
                c[rank + i] = *m;
                free.character(&c)
            })
            .collect::<Result<_>>()?;
        Ok(quotient_lattice(&free, &rels)?.quotient)
    }

    pub fn free(rank: usize) -> Self {
        CharacterLattice {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of coordinates of a character.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Least common multiple of the torsion orders (the exponent, for a finite group).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn zero(&self) -> Character {
        Character {
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Builds a character from all coordinates (free first), reducing the torsion ones.
    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        self.character_big(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn character_big(&self, coords: Vec<BigInt>) -> Result<Character> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let mut coords = coords;
        let torsion = coords.split_off(self.rank);
        Ok(self.reduce(Character {
            free: coords,
            torsion,
        }))
    }

    /// The `i`-th standard generator.
    pub fn basis_character(&self, i: usize) -> Character {
        let mut c = vec![BigInt::zero(); self.dim()];
        c[i] = BigInt::one();
        self.character_big(c).expect("index in range")
    }

    fn reduce(&self, mut c: Character) -> Character {
        for (x, m) in c.torsion.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(m);
        }
        c
    }

    pub fn contains(&self, c: &Character) -> bool {
        c.free.len() == self.rank
            && c.torsion.len() == self.torsion.len()
            && c
                .torsion
                .iter()
                .zip(&self.torsion)
                .all(|(x, m)| !x.is_negative() && x < m)
    }

    pub fn check(&self, c: &Character) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(format!("{c} is not an element of {self}")))
        }
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        self.reduce(Character {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn neg(&self, a: &Character) -> Character {
        self.reduce(Character {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().map(|x| -x).collect(),
        })
    }

    pub fn sub(&self, a: &Character, b: &Character) -> Character {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Character, k: &BigInt) -> Character {
        self.reduce(Character {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a.torsion.iter().map(|x| x * k).collect(),
        })
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Character>) -> Character {
        items
            .into_iter()
            .fold(self.zero(), |acc, c| self.add(&acc, c))
    }
}

impl fmt::Display for CharacterLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn join(xs: &[BigInt]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// A closed subgroup `C ⊂ D(Γ)`, described by the surjection `q: Γ → Γ_C`
/// restricting characters to `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPresentation {
    ambient: CharacterLattice,
    quotient: CharacterLattice,
    /// Row-vector convention: `q(χ) = χ · map`, then reduced in `Γ_C`.
    map: IntMatrix,
}

impl SubgroupPresentation {
    /// The whole group: `Γ_C = Γ`, `q` the identity.
    pub fn whole(lattice: &CharacterLattice) -> Self {
        SubgroupPresentation {
            ambient: lattice.clone(),
            quotient: lattice.clone(),
            map: IntMatrix::identity(lattice.dim()),
        }
    }

    pub fn ambient(&self) -> &CharacterLattice {
        &self.ambient
    }

    pub fn quotient(&self) -> &CharacterLattice {
        &self.quotient
    }

    pub fn map(&self) -> &IntMatrix {
        &self.map
    }

    /// True when `C` is the trivial subgroup (every character restricts to 0).
    pub fn is_trivial(&self) -> bool {
        self.quotient.dim() == 0
    }
}

/// `Γ / ⟨relations⟩` in invariant-factor form, with the quotient map.
pub fn quotient_lattice(
    lattice: &CharacterLattice,
    relations: &[Character],
) -> Result<SubgroupPresentation> {
    for r in relations {
        lattice.check(r)?;
    }
    if relations.iter().all(Character::is_zero) {
        return Ok(SubgroupPresentation::whole(lattice));
    }
    let n = lattice.dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, m) in lattice.torsion.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n];
        row[lattice.rank + i] = m.clone();
        rows.push(row);
    }
    rows.extend(relations.iter().map(|r| r.coords().cloned().collect()));
    let rel = IntMatrix::from_big_rows(rows.len(), n, rows.into_iter().flatten().collect());
    let snf = smith_normal_form(&rel);
    let diag = snf.diagonal();
    let rank = snf.rank();

    let mut torsion_cols = Vec::new();
    let mut torsion_orders = Vec::new();
    for (i, d) in diag.iter().enumerate().take(rank) {
        if !d.is_one() {
            torsion_cols.push(i);
            torsion_orders.push(d.clone());
        }
    }
    let free_cols: Vec<usize> = (rank..n).collect();
    let quotient = CharacterLattice::from_big(free_cols.len(), torsion_orders)?;

    let cols: Vec<usize> = free_cols.into_iter().chain(torsion_cols).collect();
    let mut map = IntMatrix::zeros(n, cols.len());
    for i in 0..n {
        for (k, &c) in cols.iter().enumerate() {
            map[(i, k)] = snf.v[(i, c)].clone();
        }
    }
    Ok(SubgroupPresentation {
        ambient: lattice.clone(),
        quotient,
        map,
    })
}

/// `q(χ) ∈ Γ_C`; `χ` restricts trivially to `C` iff the result is zero.
pub fn restrict(chi: &Character, sub: &SubgroupPresentation) -> Result<Character> {
    if chi.free.len() + chi.torsion.len() != sub.ambient.dim() {
        return Err(Error::DimensionMismatch {
            expected: sub.ambient.dim(),
            found: chi.free.len() + chi.torsion.len(),
        });
    }
    sub.ambient.check(chi)?;
    let coords: Vec<BigInt> = (0..sub.map.cols())
        .map(|j| {
            chi.coords()
                .enumerate()
                .map(|(i, x)| x * &sub.map[(i, j)])
                .sum()
        })
        .collect();
    sub.quotient.character_big(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&IntMatrix::from_rows(m)).diagonal()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_coprime_diagonal() {
        assert_eq!(diag(&[vec![3, 0], vec![0, 5]]), big(&[1, 15]));
    }

    #[test]
    fn snf_two_by_two() {
        assert_eq!(diag(&[vec![2, 4], vec![6, 8]]), big(&[2, 4]));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let f = smith_normal_form(&m);
        assert!(f.d.is_zero());
        assert_eq!(f.u.mul(&m).mul(&f.v), f.d);
    }

    #[test]
    fn snf_transforms_are_unimodular() {
        let m = IntMatrix::from_rows(&[vec![4, 6, -2], vec![2, 8, 10], vec![0, 3, 9]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.u.mul(&m).mul(&f.v), f.d);
        assert_eq!(f.u.determinant().abs(), BigInt::one());
        assert_eq!(f.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant(), BigInt::from(1));
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
    }

    #[test]
    fn lattice_rejects_broken_chain() {
        assert!(CharacterLattice::new(0, vec![3, 5]).is_err());
        assert!(CharacterLattice::new(0, vec![1]).is_err());
        assert!(CharacterLattice::new(1, vec![3, 6]).is_ok());
    }

    #[test]
    fn canonical_form_merges_coprime_orders() {
        let l = CharacterLattice::canonical(0, &[2, 3]).unwrap();
        assert_eq!(l, CharacterLattice::new(0, vec![6]).unwrap());
    }

    #[test]
    fn quotient_of_z_by_p() {
        let z = CharacterLattice::free(1);
        let c = quotient_lattice(&z, &[z.character(&[5]).unwrap()]).unwrap();
        assert_eq!(c.quotient(), &CharacterLattice::new(0, vec![5]).unwrap());
        let r = restrict(&z.character(&[7]).unwrap(), &c).unwrap();
        assert_eq!(r.torsion, big(&[2]));
        assert!(restrict(&z.character(&[10]).unwrap(), &c).unwrap().is_zero());
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let z2 = CharacterLattice::free(2);
        let c = quotient_lattice(&z2, &[]).unwrap();
        assert_eq!(c.quotient(), &z2);
        let chi = z2.character(&[3, -4]).unwrap();
        assert_eq!(restrict(&chi, &c).unwrap(), chi);
    }

    #[test]
    fn quotient_z2_by_2_4() {
        let z2 = CharacterLattice::free(2);
        let c = quotient_lattice(&z2, &[z2.character(&[2, 4]).unwrap()]).unwrap();
        assert_eq!(c.quotient(), &CharacterLattice::new(1, vec![2]).unwrap());
        assert!(restrict(&z2.character(&[2, 4]).unwrap(), &c).unwrap().is_zero());
        assert!(!restrict(&z2.character(&[1, 2]).unwrap(), &c).unwrap().is_zero());
    }

    #[test]
    fn restriction_to_first_factor() {
        // C = G_m × 1 inside G_m²: characters trivial on C are (0, *).
        let z2 = CharacterLattice::free(2);
        let c = quotient_lattice(&z2, &[z2.character(&[0, 1]).unwrap()]).unwrap();
        assert!(restrict(&z2.character(&[0, 7]).unwrap(), &c).unwrap().is_zero());
        assert!(!restrict(&z2.character(&[1, 7]).unwrap(), &c).unwrap().is_zero());
    }

    #[test]
    fn restrict_rejects_wrong_dimension() {
        let z = CharacterLattice::free(1);
        let c = SubgroupPresentation::whole(&z);
        let bad = CharacterLattice::free(2).character(&[1, 1]).unwrap();
        assert!(matches!(
            restrict(&bad, &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
