use std::collections::BTreeMap;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, CharacterLattice, SubgroupPresentation};

/// A `Γ`-grading of a polynomial ring: one character per variable. For a
/// diagonalizable group this is the same thing as a coaction on the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    lattice: CharacterLattice,
    weights: Vec<Character>,
}

impl Grading {
    pub fn new(lattice: CharacterLattice, weights: Vec<Character>) -> Result<Self> {
        for w in &weights {
            lattice.check(w)?;
        }
        Ok(Grading { lattice, weights })
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, m: &Monomial) -> Character {
        let mut d = self.lattice.zero();
        for (w, &e) in self.weights.iter().zip(m.exponents()) {
            if e > 0 {
                d = self.lattice.add(&d, &self.lattice.scale(w, &e.into()));
            }
        }
        d
    }

    /// The degree of `f` if it is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, f: &Poly) -> Option<Character> {
        let mut degs = f.terms().map(|(m, _)| self.degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub(crate) fn check_poly(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        Ok(())
    }
}

/// Splits `f` by `C`-degree: keys are elements of `Γ_C`, zero parts omitted.
pub fn homogeneous_components(
    f: &Poly,
    grading: &Grading,
    sub: &SubgroupPresentation,
) -> Result<BTreeMap<Character, Poly>> {
    grading.check_poly(f)?;
    if sub.ambient() != grading.lattice() {
        return Err(Error::LatticeMismatch(format!(
            "subgroup of {} used with a grading by {}",
            sub.ambient(),
            grading.lattice()
        )));
    }
    let mut parts: BTreeMap<Character, Poly> = BTreeMap::new();
    for (m, c) in f.terms() {
        let key = restrict(&grading.degree(m), sub)?;
        parts
            .entry(key)
            .or_insert_with(|| Poly::zero(f.field(), f.nvars()))
            .add_term(m.clone(), c.clone());
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quotient_lattice;
    use crate::scalar::Field;

    fn gm_grading(ws: &[i64]) -> Grading {
        let z = CharacterLattice::free(1);
        Grading::new(z.clone(), ws.iter().map(|&w| z.character(&[w]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn splits_by_weight() {
        let g = gm_grading(&[1, 0]);
        let f = Field::Rational;
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let p = &x + &(&y * &y);
        let parts = homogeneous_components(&p, &g, &SubgroupPresentation::whole(g.lattice())).unwrap();
        let z = g.lattice();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&z.character(&[1]).unwrap()], x);
        assert_eq!(parts[&z.character(&[0]).unwrap()], &y * &y);
    }

    #[test]
    fn balanced_product_is_degree_zero() {
        let g = gm_grading(&[1, -1]);
        let f = Field::Rational;
        let xy = &Poly::var(f, 2, 0) * &Poly::var(f, 2, 1);
        let parts = homogeneous_components(&xy, &g, &SubgroupPresentation::whole(g.lattice())).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts.contains_key(&g.lattice().zero()));
    }

    #[test]
    fn mu3_collapses_cube() {
        // weights (1) under μ₃ ⊂ 𝔾_m: x³ has degree 0 mod 3
        let g = gm_grading(&[1]);
        let z = g.lattice().clone();
        let mu3 = quotient_lattice(&z, &[z.character(&[3]).unwrap()]).unwrap();
        let f = Field::Rational;
        let x = Poly::var(f, 1, 0);
        let p = &x.pow(3) + &x;
        let parts = homogeneous_components(&p, &g, &mu3).unwrap();
        let zero = mu3.quotient().zero();
        let one = mu3.quotient().character(&[1]).unwrap();
        assert_eq!(parts[&zero], x.pow(3));
        assert_eq!(parts[&one], x);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let g = gm_grading(&[1]);
        let p = Poly::var(Field::Rational, 2, 0);
        assert!(matches!(
            homogeneous_components(&p, &g, &SubgroupPresentation::whole(g.lattice())),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
