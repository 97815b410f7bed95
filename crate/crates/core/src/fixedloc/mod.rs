//! Fixed loci of diagonalizable group actions on affine schemes, the
//! concentration section cutting them out, and a brute-force `𝔽_q` oracle.

pub mod gf;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, CharacterLattice, SubgroupPresentation};
use crate::polyalg::first_inhomogeneous;
use crate::polyalg::{homogeneous_components, ideal_equal, Grading, GroebnerConfig, Ideal, Poly};
use crate::scalar::Field;

pub use gf::FiniteField;

/// Enumeration limits for the point oracle.
pub const MAX_ORACLE_POINTS: u64 = 4_000_000;
pub const MAX_ORACLE_GROUP: u64 = 1_000_000;

/// `X = Spec k[x₁…x_n]/I` with `G = D(Γ)` acting on `x_i` through weight `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantAffineScheme {
    names: Vec<String>,
    grading: Grading,
    ideal: Ideal,
}

impl EquivariantAffineScheme {
    /// Validates that the ideal is homogeneous for the grading.
    pub fn new(names: Vec<String>, grading: Grading, ideal: Ideal, config: &GroebnerConfig) -> Result<Self> {
        if names.len() != grading.nvars() || ideal.nvars() != grading.nvars() {
            return Err(Error::DimensionMismatch {
                expected: grading.nvars(),
                found: names.len().max(ideal.nvars()),
            });
        }
        if let Some((index, degrees)) = first_inhomogeneous(&ideal, &grading, config)? {
            return Err(Error::NonHomogeneous {
                index,
                degrees: format!(
                    "{{{}}}",
                    degrees.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ),
            });
        }
        Ok(EquivariantAffineScheme { names, grading, ideal })
    }

    /// Affine space with the given weights.
    pub fn affine_space(field: Field, lattice: CharacterLattice, weights: Vec<Character>) -> Result<Self> {
        let n = weights.len();
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let grading = Grading::new(lattice, weights)?;
        Ok(EquivariantAffineScheme {
            names,
            grading,
            ideal: Ideal::zero(field, n),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn field(&self) -> Field {
        self.ideal.field()
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn lattice(&self) -> &CharacterLattice {
        self.grading.lattice()
    }

    fn check_subgroup(&self, sub: &SubgroupPresentation) -> Result<()> {
        if sub.ambient() != self.lattice() {
            return Err(Error::LatticeMismatch(format!(
                "subgroup of {} acting on a scheme graded by {}",
                sub.ambient(),
                self.lattice()
            )));
        }
        Ok(())
    }

    /// Indices of the variables whose weight is nontrivial on `C`.
    pub fn moving_variables(&self, sub: &SubgroupPresentation) -> Result<Vec<usize>> {
        self.check_subgroup(sub)?;
        let mut out = Vec::new();
        for (i, w) in self.grading.weights().iter().enumerate() {
            if !restrict(w, sub)?.is_zero() {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// A representation of `G`, as a multiset of characters with a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    lattice: CharacterLattice,
    characters: Vec<Character>,
}

impl Representation {
    pub fn new(lattice: CharacterLattice, characters: Vec<Character>) -> Result<Self> {
        for c in &characters {
            lattice.check(c)?;
        }
        Ok(Representation { lattice, characters })
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn rank(&self) -> usize {
        self.characters.len()
    }

    /// `V^C = 0`: no character is trivial on `C`.
    pub fn has_no_fixed_vectors(&self, sub: &SubgroupPresentation) -> Result<bool> {
        for c in &self.characters {
            if restrict(c, sub)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An equivariant section of `V ⊗ O_X`: component `i` has degree `−χ_i`, so
/// that `Σ e_i ⊗ s_i` is invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantSection {
    representation: Representation,
    components: Vec<Poly>,
}

impl EquivariantSection {
    pub fn new(representation: Representation, components: Vec<Poly>, grading: &Grading) -> Result<Self> {
        if components.len() != representation.rank() {
            return Err(Error::DimensionMismatch {
                expected: representation.rank(),
                found: components.len(),
            });
        }
        if representation.lattice() != grading.lattice() {
            return Err(Error::LatticeMismatch(format!(
                "representation of {} with a grading by {}",
                representation.lattice(),
                grading.lattice()
            )));
        }
        let lattice = grading.lattice();
        for (i, (chi, s)) in representation.characters.iter().zip(&components).enumerate() {
            if s.is_zero() {
                continue;
            }
            let expected = lattice.neg(chi);
            match grading.homogeneous_degree(s) {
                Some(d) if d == expected => {}
                _ => {
                    return Err(Error::invalid(format!(
                        "section component {i} is not homogeneous of degree {expected}"
                    )))
                }
            }
        }
        Ok(EquivariantSection {
            representation,
            components,
        })
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `f*(s)` along a graded ring map given by the images of the variables.
    pub fn pullback(&self, images: &[Poly], grading: &Grading) -> Result<EquivariantSection> {
        let components = self
            .components
            .iter()
            .map(|s| s.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        EquivariantSection::new(self.representation.clone(), components, grading)
    }
}

/// `I + ⟨x_i : w_i nontrivial on C⟩`.
pub fn fixed_locus_ideal(x: &EquivariantAffineScheme, sub: &SubgroupPresentation) -> Result<Ideal> {
    let moving = x.moving_variables(sub)?;
    x.ideal
        .extended(moving.into_iter().map(|i| Poly::var(x.field(), x.nvars(), i)))
}

/// `σ_G(a) = Σ e_{−γ} ⊗ a_γ` over the `Γ`-degrees `γ` of `a` that are
/// nontrivial on `C`; keys are the characters `−γ`.
pub fn sigma_g(
    x: &EquivariantAffineScheme,
    sub: &SubgroupPresentation,
    a: &Poly,
) -> Result<BTreeMap<Character, Poly>> {
    x.check_subgroup(sub)?;
    let whole = SubgroupPresentation::whole(x.lattice());
    let mut out = BTreeMap::new();
    for (gamma, part) in homogeneous_components(a, &x.grading, &whole)? {
        if !restrict(&gamma, sub)?.is_zero() {
            out.insert(x.lattice().neg(&gamma), part);
        }
    }
    Ok(out)
}

/// How to choose the section of the concentration certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SectionChoice {
    /// One coordinate per variable moved by `C`.
    #[default]
    Coordinates,
    /// Coordinates dropped greedily while the zero locus stays `X^C`.
    Minimal,
}

/// A representation `V` with `V^C = 0` and an equivariant section whose zero
/// scheme is `X^C`.
pub fn concentration_section(
    x: &EquivariantAffineScheme,
    sub: &SubgroupPresentation,
) -> Result<(Representation, EquivariantSection)> {
    let moving = x.moving_variables(sub)?;
    section_from(x, &moving)
}

pub fn concentration_section_with(
    x: &EquivariantAffineScheme,
    sub: &SubgroupPresentation,
    choice: SectionChoice,
    config: &GroebnerConfig,
) -> Result<(Representation, EquivariantSection)> {
    let mut keep = x.moving_variables(sub)?;
    if choice == SectionChoice::Minimal {
        let target = fixed_locus_ideal(x, sub)?;
        let mut i = 0;
        while i < keep.len() {
            let mut trial = keep.clone();
            trial.remove(i);
            let (_, s) = section_from(x, &trial)?;
            if ideal_equal(&zero_locus(&s, x)?, &target, config)? {
                keep = trial;
            } else {
                i += 1;
            }
        }
    }
    section_from(x, &keep)
}

fn section_from(x: &EquivariantAffineScheme, vars: &[usize]) -> Result<(Representation, EquivariantSection)> {
    let lattice = x.lattice();
    let chars = vars
        .iter()
        .map(|&i| lattice.neg(&x.grading.weights()[i]))
        .collect();
    let rep = Representation::new(lattice.clone(), chars)?;
    let comps = vars
        .iter()
        .map(|&i| Poly::var(x.field(), x.nvars(), i))
        .collect();
    let s = EquivariantSection::new(rep.clone(), comps, &x.grading)?;
    Ok((rep, s))
}

/// The ideal of the zero scheme of `s`: `I + ⟨s_i⟩`.
pub fn zero_locus(s: &EquivariantSection, x: &EquivariantAffineScheme) -> Result<Ideal> {
    x.ideal.extended(s.components.iter().cloned())
}

/// A polynomial compiled for repeated evaluation over `𝔽_q`.
struct Compiled {
    terms: Vec<(u64, Vec<u32>)>,
}

impl Compiled {
    fn new(f: &Poly, gf: &FiniteField) -> Result<Self> {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let c = gf.from_scalar(c)?;
            if c != 0 {
                terms.push((c, m.exponents().to_vec()));
            }
        }
        Ok(Compiled { terms })
    }

    fn eval(&self, gf: &FiniteField, point: &[u64]) -> u64 {
        let mut acc = 0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (&x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t = gf.mul(t, gf.pow_u32(x, e));
                }
            }
            acc = gf.add(acc, t);
        }
        acc
    }
}

fn check_field(field: Field, gf: &FiniteField) -> Result<()> {
    if let Field::Prime(p) = field {
        if p != gf.characteristic() {
            return Err(Error::InadmissibleFieldSize {
                q: gf.q(),
                reason: format!("the scheme is defined over {field}"),
            });
        }
    }
    Ok(())
}

fn all_points(n: usize, gf: &FiniteField) -> Result<impl Iterator<Item = Vec<u64>>> {
    let q = gf.q();
    let count = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > MAX_ORACLE_POINTS as u128 {
        return Err(Error::InadmissibleFieldSize {
            q,
            reason: format!("{q}^{n} points exceed the enumeration limit"),
        });
    }
    let count = count as u64;
    Ok((0..count).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let d = idx % q;
                idx /= q;
                d
            })
            .collect()
    }))
}

/// The `𝔽_q`-points of `V(J)`, for an ideal with coefficients reducible mod `p`.
pub fn vanishing_set(ideal: &Ideal, q: u64) -> Result<BTreeSet<Vec<u64>>> {
    let gf = FiniteField::new(q)?;
    check_field(ideal.field(), &gf)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| Compiled::new(g, &gf))
        .collect::<Result<Vec<_>>>()?;
    Ok(all_points(ideal.nvars(), &gf)?
        .filter(|pt| gens.iter().all(|g| g.eval(&gf, pt) == 0))
        .collect())
}

/// The group `C(𝔽_q) = Hom(Γ_C, 𝔽_q^×)`, each element given by the discrete
/// logarithms of the images of the generators of `Γ_C`.
fn group_points(sub: &SubgroupPresentation, gf: &FiniteField) -> Result<Vec<Vec<BigInt>>> {
    let q = gf.q();
    let n = BigInt::from(q - 1);
    let quotient = sub.quotient();
    let mut factors: Vec<Vec<BigInt>> = Vec::new();
    for _ in 0..quotient.rank() {
        factors.push((0..q - 1).map(BigInt::from).collect());
    }
    for d in quotient.torsion_orders() {
        if !n.is_multiple_of(d) {
            return Err(Error::InadmissibleFieldSize {
                q,
                reason: format!("the torsion order {d} of the subgroup's characters does not divide q - 1"),
            });
        }
        let step = &n / d;
        let d = d.to_u64().expect("divides q - 1");
        factors.push((0..d).map(|i| &step * BigInt::from(i)).collect());
    }
    let size: u128 = factors.iter().map(|f| f.len() as u128).product();
    if size > MAX_ORACLE_GROUP as u128 {
        return Err(Error::InadmissibleFieldSize {
            q,
            reason: format!("C(F_{q}) has {size} elements, above the enumeration limit"),
        });
    }
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for f in &factors {
        out = out
            .iter()
            .flat_map(|prefix| {
                f.iter().map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

/// Whether `q` is admissible for comparing the oracle with the fixed-locus
/// ideal: characteristic matches the scheme, the torsion of `Γ_C` divides
/// `q − 1`, and no weight moved by `C` becomes trivial on `C(𝔽_q)`.
pub fn check_admissible(x: &EquivariantAffineScheme, sub: &SubgroupPresentation, q: u64) -> Result<()> {
    let gf = FiniteField::new(q)?;
    check_field(x.field(), &gf)?;
    for c in x.ideal.generators() {
        Compiled::new(c, &gf)?;
    }
    let group = group_points(sub, &gf)?;
    let n = BigInt::from(q - 1);
    for (i, w) in x.grading.weights().iter().enumerate() {
        let chi = restrict(w, sub)?;
        if !chi.is_zero() && trivial_on(&chi, &group, &n) {
            return Err(Error::InadmissibleFieldSize {
                q,
                reason: format!("the weight of {} is trivial on C(F_{q})", x.names[i]),
            });
        }
    }
    Ok(())
}

fn trivial_on(chi: &Character, group: &[Vec<BigInt>], n: &BigInt) -> bool {
    group.iter().all(|g| {
        let e: BigInt = chi.coords().zip(g).map(|(a, b)| a * b).sum();
        e.mod_floor(n).is_zero()
    })
}

/// All `𝔽_q`-points of `X` fixed by every element of `C(𝔽_q)`, found by
/// enumerating points and group elements.
pub fn fixed_points_oracle(
    x: &EquivariantAffineScheme,
    sub: &SubgroupPresentation,
    q: u64,
) -> Result<BTreeSet<Vec<u64>>> {
    x.check_subgroup(sub)?;
    check_admissible(x, sub, q)?;
    let gf = FiniteField::new(q)?;
    let group = group_points(sub, &gf)?;
    let n = BigInt::from(q - 1);
    // the discrete log of w_i(g) for each group element and variable
    let logs: Vec<Vec<BigInt>> = group
        .iter()
        .map(|g| {
            x.grading
                .weights()
                .iter()
                .map(|w| {
                    let chi = restrict(w, sub).expect("checked lattice");
                    let e: BigInt = chi.coords().zip(g).map(|(a, b)| a * b).sum();
                    e.mod_floor(&n)
                })
                .collect()
        })
        .collect();
    let points = vanishing_set(&x.ideal, q)?;
    Ok(points
        .into_iter()
        .filter(|pt| {
            logs.iter().all(|g| {
                pt.iter()
                    .zip(g)
                    .all(|(&xi, e)| gf.mul(gf.primitive_power(e), xi) == xi)
            })
        })
        .collect())
}

/// Admissible field sizes up to `limit`, in increasing order.
pub fn admissible_field_sizes(x: &EquivariantAffineScheme, sub: &SubgroupPresentation, limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&q| gf::prime_power(q).is_some())
        .filter(|&q| check_admissible(x, sub, q).is_ok())
        .filter(|&q| {
            (q as u128)
                .checked_pow(x.nvars() as u32)
                .is_some_and(|c| c <= MAX_ORACLE_POINTS as u128)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quotient_lattice;
    use crate::polyalg::ideal_member;

    fn cfg() -> GroebnerConfig {
        GroebnerConfig::default()
    }

    fn scheme(lattice: &CharacterLattice, ws: &[&[i64]], gens: impl Fn(&[Poly]) -> Vec<Poly>) -> EquivariantAffineScheme {
        let f = Field::Rational;
        let n = ws.len();
        let vars: Vec<Poly> = (0..n).map(|i| Poly::var(f, n, i)).collect();
        let grading = Grading::new(lattice.clone(), ws.iter().map(|w| lattice.character(w).unwrap()).collect()).unwrap();
        let ideal = Ideal::new(f, n, gens(&vars)).unwrap();
        let names = (0..n).map(|i| ["x", "y", "z", "w"][i].to_string()).collect();
        EquivariantAffineScheme::new(names, grading, ideal, &cfg()).unwrap()
    }

    fn gm() -> CharacterLattice {
        CharacterLattice::free(1)
    }

    fn mu(p: i64) -> CharacterLattice {
        CharacterLattice::new(0, vec![p]).unwrap()
    }

    fn whole(l: &CharacterLattice) -> SubgroupPresentation {
        SubgroupPresentation::whole(l)
    }

    #[test]
    fn fixed_locus_examples() {
        let x = scheme(&gm(), &[&[1], &[0]], |_| vec![]);
        let i = fixed_locus_ideal(&x, &whole(&gm())).unwrap();
        let want = Ideal::new(Field::Rational, 2, vec![Poly::var(Field::Rational, 2, 0)]).unwrap();
        assert!(ideal_equal(&i, &want, &cfg()).unwrap());

        let hyp = scheme(&gm(), &[&[1], &[-1]], |v| vec![&(&v[0] * &v[1]) - &Poly::one(Field::Rational, 2)]);
        let i = fixed_locus_ideal(&hyp, &whole(&gm())).unwrap();
        assert!(i.groebner(&cfg()).unwrap().is_unit_ideal());
    }

    #[test]
    fn hyperbola_oracle_is_empty() {
        let hyp = scheme(&gm(), &[&[1], &[-1]], |v| vec![&(&v[0] * &v[1]) - &Poly::one(Field::Rational, 2)]);
        assert!(fixed_points_oracle(&hyp, &whole(&gm()), 5).unwrap().is_empty());
        assert_eq!(vanishing_set(hyp.ideal(), 5).unwrap().len(), 4);
    }

    #[test]
    fn oracle_examples() {
        let l = mu(3);
        let a1 = scheme(&l, &[&[1]], |_| vec![]);
        assert_eq!(fixed_points_oracle(&a1, &whole(&l), 7).unwrap(), BTreeSet::from([vec![0]]));
        let a2 = scheme(&l, &[&[0], &[1]], |_| vec![]);
        let pts = fixed_points_oracle(&a2, &whole(&l), 7).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|p| p[1] == 0));
    }

    #[test]
    fn inadmissible_sizes_are_rejected() {
        let l = mu(3);
        let a1 = scheme(&l, &[&[1]], |_| vec![]);
        // 3 does not divide 5 - 1
        assert!(matches!(
            fixed_points_oracle(&a1, &whole(&l), 5),
            Err(Error::InadmissibleFieldSize { .. })
        ));
        // over F_2 the weight 1 of G_m is trivial on G_m(F_2) = 1
        let g = scheme(&gm(), &[&[1]], |_| vec![]);
        assert!(check_admissible(&g, &whole(&gm()), 2).is_err());
        // weight 2 is trivial on G_m(F_3) = {±1}
        let g2 = scheme(&gm(), &[&[2]], |_| vec![]);
        assert!(check_admissible(&g2, &whole(&gm()), 3).is_err());
        assert!(check_admissible(&g2, &whole(&gm()), 4).is_ok());
        assert_eq!(admissible_field_sizes(&a1, &whole(&l), 16), vec![4, 7, 13, 16]);
    }

    #[test]
    fn sigma_examples() {
        let l = mu(5);
        let x = scheme(&l, &[&[1]], |_| vec![]);
        let f = Field::Rational;
        let v = Poly::var(f, 1, 0);
        let g = whole(&l);
        let s = sigma_g(&x, &g, &v).unwrap();
        assert_eq!(s, BTreeMap::from([(l.character(&[-1]).unwrap(), v.clone())]));
        assert!(sigma_g(&x, &g, &v.pow(5)).unwrap().is_empty());
        let s = sigma_g(&x, &g, &(&Poly::one(f, 1) + &v)).unwrap();
        assert_eq!(s, BTreeMap::from([(l.character(&[-1]).unwrap(), v)]));
    }

    #[test]
    fn section_examples() {
        let x = scheme(&gm(), &[&[1], &[2]], |_| vec![]);
        let (rep, s) = concentration_section(&x, &whole(&gm())).unwrap();
        let l = gm();
        assert_eq!(rep.characters(), &[l.character(&[-1]).unwrap(), l.character(&[-2]).unwrap()]);
        assert_eq!(s.components().len(), 2);

        let m5 = mu(5);
        let y = scheme(&m5, &[&[0], &[3]], |_| vec![]);
        let (rep, s) = concentration_section(&y, &whole(&m5)).unwrap();
        assert_eq!(rep.characters(), &[m5.character(&[-3]).unwrap()]);
        assert_eq!(s.components(), &[Poly::var(Field::Rational, 2, 1)]);
        assert!(rep.has_no_fixed_vectors(&whole(&m5)).unwrap());
    }

    #[test]
    fn zero_locus_equals_fixed_locus() {
        let hyp = scheme(&gm(), &[&[1], &[-1]], |v| vec![&(&v[0] * &v[1]) - &Poly::one(Field::Rational, 2)]);
        let g = whole(&gm());
        let (_, s) = concentration_section(&hyp, &g).unwrap();
        let z = zero_locus(&s, &hyp).unwrap();
        assert!(z.groebner(&cfg()).unwrap().is_unit_ideal());
        assert!(ideal_equal(&z, &fixed_locus_ideal(&hyp, &g).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn minimal_section_drops_redundant_coordinates() {
        // xy = 1 already forces both coordinates to be units; one of them suffices
        let hyp = scheme(&gm(), &[&[1], &[-1]], |v| vec![&(&v[0] * &v[1]) - &Poly::one(Field::Rational, 2)]);
        let g = whole(&gm());
        let (rep, s) = concentration_section_with(&hyp, &g, SectionChoice::Minimal, &cfg()).unwrap();
        assert_eq!(rep.rank(), 1);
        assert!(ideal_equal(&zero_locus(&s, &hyp).unwrap(), &fixed_locus_ideal(&hyp, &g).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn zero_section_of_trivial_action() {
        let x = scheme(&gm(), &[&[0]], |_| vec![]);
        let trivial = quotient_lattice(&gm(), &[gm().character(&[1]).unwrap()]).unwrap();
        let (rep, s) = concentration_section(&x, &trivial).unwrap();
        assert_eq!(rep.rank(), 0);
        assert_eq!(zero_locus(&s, &x).unwrap(), *x.ideal());
    }

    #[test]
    fn section_components_must_have_compensating_degree() {
        let l = gm();
        let g = Grading::new(l.clone(), vec![l.character(&[1]).unwrap()]).unwrap();
        let rep = Representation::new(l.clone(), vec![l.character(&[1]).unwrap()]).unwrap();
        assert!(EquivariantSection::new(rep, vec![Poly::var(Field::Rational, 1, 0)], &g).is_err());
    }

    #[test]
    fn inhomogeneous_scheme_rejected() {
        let l = gm();
        let f = Field::Rational;
        let g = Grading::new(l.clone(), vec![l.character(&[1]).unwrap(), l.zero()]).unwrap();
        let i = Ideal::new(f, 2, vec![&Poly::var(f, 2, 0) + &Poly::var(f, 2, 1)]).unwrap();
        let err = EquivariantAffineScheme::new(vec!["x".into(), "y".into()], g, i, &cfg()).unwrap_err();
        assert_eq!(
            err,
            Error::NonHomogeneous {
                index: 0,
                degrees: "{(0), (1)}".into()
            }
        );
    }

    #[test]
    fn arbitrary_section_zero_locus_contains_fixed_ideal() {
        // s = (x², x·y) on A² with weights (1, 0): V = {−2, −1}, V^G = 0
        let x = scheme(&gm(), &[&[1], &[0]], |_| vec![]);
        let l = gm();
        let f = Field::Rational;
        let (a, b) = (Poly::var(f, 2, 0), Poly::var(f, 2, 1));
        let rep = Representation::new(l.clone(), vec![l.character(&[-2]).unwrap(), l.character(&[-1]).unwrap()]).unwrap();
        let s = EquivariantSection::new(rep, vec![a.pow(2), &a * &b], x.grading()).unwrap();
        let fixed = fixed_locus_ideal(&x, &whole(&l)).unwrap();
        for g in zero_locus(&s, &x).unwrap().generators() {
            assert!(ideal_member(g, &fixed, &cfg()).unwrap());
        }
    }
}
