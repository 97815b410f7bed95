use super::grading::{homogeneous_components, Grading};
use super::groebner::{groebner, GroebnerBasis, GroebnerConfig};
use super::Poly;
use crate::error::{Error, Result};
use crate::lattice::SubgroupPresentation;
use crate::scalar::Field;

/// An ideal given by generators. Questions about it are answered through its
/// reduced Gröbner basis, so they do not depend on the generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(field: Field, nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "generator over {} in an ideal over {field}",
                    g.field()
                )));
            }
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Ideal {
            field,
            nvars,
            generators,
        })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        Ideal {
            field,
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn unit(field: Field, nvars: usize) -> Self {
        Ideal {
            field,
            nvars,
            generators: vec![Poly::one(field, nvars)],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// `self + ⟨extra⟩`
    pub fn extended(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(self.field, self.nvars, gens)
    }

    pub fn groebner(&self, config: &GroebnerConfig) -> Result<GroebnerBasis> {
        groebner(self.field, self.nvars, &self.generators, config)
    }

    fn check_same_ring(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "polynomial over {} tested against an ideal over {}",
                f.field(),
                self.field
            )));
        }
        Ok(())
    }
}

pub fn ideal_member(f: &Poly, ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    ideal.check_same_ring(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    Ok(ideal.groebner(config)?.contains(f))
}

pub fn ideal_equal(a: &Ideal, b: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    if a.nvars != b.nvars || a.field != b.field {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    Ok(a.groebner(config)? == b.groebner(config)?)
}

/// True iff every homogeneous component of every generator lies in the ideal.
pub fn is_homogeneous(ideal: &Ideal, grading: &Grading, config: &GroebnerConfig) -> Result<bool> {
    Ok(first_inhomogeneous(ideal, grading, config)?.is_none())
}

/// Index of the first generator with a component outside the ideal, with the
/// degrees of all its components.
pub(crate) fn first_inhomogeneous(
    ideal: &Ideal,
    grading: &Grading,
    config: &GroebnerConfig,
) -> Result<Option<(usize, Vec<crate::lattice::Character>)>> {
    let whole = SubgroupPresentation::whole(grading.lattice());
    let mut basis: Option<GroebnerBasis> = None;
    for (i, g) in ideal.generators.iter().enumerate() {
        let parts = homogeneous_components(g, grading, &whole)?;
        if parts.len() <= 1 {
            continue;
        }
        if basis.is_none() {
            basis = Some(ideal.groebner(config)?);
        }
        let gb = basis.as_ref().expect("computed above");
        if parts.values().any(|p| !gb.contains(p)) {
            return Ok(Some((i, parts.keys().cloned().collect())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CharacterLattice;

    fn q() -> Field {
        Field::Rational
    }

    fn xy() -> (Poly, Poly) {
        (Poly::var(q(), 2, 0), Poly::var(q(), 2, 1))
    }

    fn ideal(gens: Vec<Poly>) -> Ideal {
        Ideal::new(q(), 2, gens).unwrap()
    }

    fn cfg() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    fn grading(ws: &[i64]) -> Grading {
        let z = CharacterLattice::free(1);
        Grading::new(z.clone(), ws.iter().map(|&w| z.character(&[w]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let (x, y) = xy();
        let i = ideal(vec![&x.pow(2) + &y.pow(2), &x * &y]);
        // x³ = x(x² + y²) − y(xy)
        let combo = &(&x * &(&x.pow(2) + &y.pow(2))) - &(&y * &(&x * &y));
        assert_eq!(combo, x.pow(3));
        assert!(ideal_member(&x.pow(3), &i, &cfg()).unwrap());
        assert!(!ideal_member(&x, &ideal(vec![x.pow(2)]), &cfg()).unwrap());
        assert!(ideal_member(&Poly::zero(q(), 2), &ideal(vec![x.pow(2)]), &cfg()).unwrap());
    }

    #[test]
    fn equality_examples() {
        let (x, y) = xy();
        let one = Poly::one(q(), 2);
        assert!(ideal_equal(&ideal(vec![x.clone(), y.clone()]), &ideal(vec![&x + &y, y.clone()]), &cfg()).unwrap());
        assert!(!ideal_equal(&ideal(vec![x.pow(2)]), &ideal(vec![x.clone()]), &cfg()).unwrap());
        assert!(ideal_equal(
            &ideal(vec![x.clone(), y.clone(), &(&x * &y) - &one]),
            &ideal(vec![one.clone()]),
            &cfg()
        )
        .unwrap());
    }

    #[test]
    fn homogeneity_examples() {
        let (x, y) = xy();
        let one = Poly::one(q(), 2);
        assert!(is_homogeneous(&ideal(vec![&(&x * &y) - &one]), &grading(&[1, -1]), &cfg()).unwrap());
        assert!(!is_homogeneous(&ideal(vec![&x + &y]), &grading(&[1, 0]), &cfg()).unwrap());
        assert!(is_homogeneous(&ideal(vec![&x.pow(2) - &y]), &grading(&[1, 2]), &cfg()).unwrap());
    }

    #[test]
    fn inhomogeneous_generator_redundant_in_ideal_is_fine() {
        // ⟨x, y, x + y⟩ is homogeneous even though x + y is not, for weights (1, 0)
        let (x, y) = xy();
        let i = ideal(vec![x.clone(), y.clone(), &x + &y]);
        assert!(is_homogeneous(&i, &grading(&[1, 0]), &cfg()).unwrap());
    }

    #[test]
    fn member_checks_ring() {
        let (x, _) = xy();
        let other = Poly::var(q(), 3, 0);
        assert!(ideal_member(&other, &ideal(vec![x]), &cfg()).is_err());
    }
}
