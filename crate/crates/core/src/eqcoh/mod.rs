//! Equivariant cohomology of points and of projective-space models for
//! diagonalizable groups, with the additive formal group law.
//!
//! For `Γ = ℤ^r ⊕ (ℤ/p)^s` the point ring is
//! `k[t₁…t_r, v₁…v_s] ⊗ Λ[u₁…u_s]` with `t, v` in bidegree `(2, 1)` and `u`
//! in `(1, 1)`. Classes live in a single graded-commutative representation
//! ([`Class`]) shared by point rings and projective models.

mod localized;
mod model;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, CharacterLattice, SubgroupPresentation};
use crate::polyalg::{Monomial, Poly};
use crate::scalar::{is_prime, Field, Scalar};

pub use localized::{localize_eq, LocalizedClass};
pub use model::{
    bott_pushforward, concentration_check, fixed_components, fixed_locus_unit, presentation_pushforward,
    ConcentrationReport, FixedComponent, ProjectiveModelRing,
};

/// Value of `u_j²` in the point ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum USquare {
    /// `u² = 0`; forced by graded commutativity when `p` is odd.
    #[default]
    Zero,
    /// `u² = τ·v` with `τ` adjoined in bidegree `(0, 1)`; only for `p = 2`.
    TauV,
}

/// Monomial `x^a · u_{i₁}⋯u_{i_k}` with `i₁ < … < i_k`; `odd` is a bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GMonomial {
    pub even: Vec<u32>,
    pub odd: u64,
}

type Terms = BTreeMap<GMonomial, Scalar>;

/// Generators and relations of a graded-commutative ring: even slots are
/// `t₁…t_r, v₁…v_s`, then `τ` if present, then `ζ` for a projective model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingData {
    field: Field,
    lattice: CharacterLattice,
    n_t: usize,
    n_v: usize,
    u_square: USquare,
    /// `ζ^n = −Σ_{i<n} c_i ζ^i`, stored as `(n, [c_0 … c_{n−1}])`.
    relation: Option<(u32, Vec<Terms>)>,
}

pub type Ring = Arc<RingData>;

impl RingData {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    pub fn num_t(&self) -> usize {
        self.n_t
    }

    pub fn num_v(&self) -> usize {
        self.n_v
    }

    pub fn u_square(&self) -> USquare {
        self.u_square
    }

    pub fn has_tau(&self) -> bool {
        self.u_square == USquare::TauV
    }

    pub fn has_zeta(&self) -> bool {
        self.relation.is_some()
    }

    /// Degree `n` of the projective relation, if any.
    pub fn zeta_degree(&self) -> Option<u32> {
        self.relation.as_ref().map(|(n, _)| *n)
    }

    pub fn num_even(&self) -> usize {
        self.n_t + self.n_v + usize::from(self.has_tau()) + usize::from(self.has_zeta())
    }

    pub fn t_index(&self, i: usize) -> usize {
        i
    }

    pub fn v_index(&self, j: usize) -> usize {
        self.n_t + j
    }

    pub fn tau_index(&self) -> Option<usize> {
        self.has_tau().then_some(self.n_t + self.n_v)
    }

    pub fn zeta_index(&self) -> Option<usize> {
        self.has_zeta().then(|| self.num_even() - 1)
    }

    fn same_base(&self, other: &RingData) -> bool {
        self.field == other.field
            && self.lattice == other.lattice
            && self.n_t == other.n_t
            && self.n_v == other.n_v
            && self.u_square == other.u_square
    }

    pub fn names(&self) -> (Vec<String>, Vec<String>) {
        let single = |prefix: &str, n: usize, i: usize| {
            if n == 1 {
                prefix.to_string()
            } else {
                format!("{prefix}{}", i + 1)
            }
        };
        let mut even: Vec<String> = (0..self.n_t).map(|i| single("t", self.n_t, i)).collect();
        even.extend((0..self.n_v).map(|j| single("v", self.n_v, j)));
        if self.has_tau() {
            even.push("tau".into());
        }
        if self.has_zeta() {
            even.push("z".into());
        }
        let odd = (0..self.n_v).map(|j| single("u", self.n_v, j)).collect();
        (even, odd)
    }

    fn one_monomial(&self) -> GMonomial {
        GMonomial {
            even: vec![0; self.num_even()],
            odd: 0,
        }
    }

    /// Product of two monomials: the result monomial and whether the sign flips,
    /// or `None` when it vanishes.
    fn mul_monomials(&self, a: &GMonomial, b: &GMonomial) -> Option<(GMonomial, bool)> {
        let mut even: Vec<u32> = a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect();
        let mut set = a.odd;
        let mut neg = false;
        let mut rest = b.odd;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let greater = (set >> (j + 1)).count_ones();
            if greater % 2 == 1 {
                neg = !neg;
            }
            if set & (1 << j) != 0 {
                match self.u_square {
                    USquare::Zero => return None,
                    USquare::TauV => {
                        set &= !(1 << j);
                        even[self.tau_index().expect("tau present")] += 1;
                        even[self.v_index(j)] += 1;
                    }
                }
            } else {
                set |= 1 << j;
            }
        }
        Some((GMonomial { even, odd: set }, neg))
    }

    /// Rewrites every power `ζ^k` with `k ≥ n` using the relation.
    fn reduce(&self, terms: &mut Terms) {
        let Some((n, coeffs)) = &self.relation else {
            return;
        };
        let z = self.zeta_index().expect("model ring");
        loop {
            let Some(m) = terms.keys().find(|m| m.even[z] >= *n).cloned() else {
                return;
            };
            let c = terms.remove(&m).expect("present");
            let mut base = m.clone();
            base.even[z] -= n;
            for (i, ci) in coeffs.iter().enumerate() {
                for (k, a) in ci {
                    let Some((mut prod, neg)) = self.mul_monomials(&base, k) else {
                        continue;
                    };
                    prod.even[z] += i as u32;
                    let mut coef = -&(&c * a);
                    if neg {
                        coef = -coef;
                    }
                    add_term(terms, prod, coef);
                }
            }
        }
    }
}

fn add_term(terms: &mut Terms, m: GMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(old) => {
            let s = &*old + &c;
            if s.is_zero() {
                terms.remove(&m);
            } else {
                *old = s;
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

/// An element of a point ring or of a projective model ring, always stored
/// reduced (powers of `ζ` below the relation degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    ring: Ring,
    terms: Terms,
}

impl Class {
    pub fn zero(ring: &Ring) -> Class {
        Class {
            ring: ring.clone(),
            terms: Terms::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Class {
        let mut terms = Terms::new();
        add_term(&mut terms, ring.one_monomial(), c);
        Class {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Ring) -> Class {
        Class::constant(ring, ring.field.one())
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (GMonomial, Scalar)>) -> Class {
        let mut t = Terms::new();
        for (m, c) in terms {
            assert_eq!(m.even.len(), ring.num_even(), "monomial arity");
            add_term(&mut t, m, c);
        }
        ring.reduce(&mut t);
        Class {
            ring: ring.clone(),
            terms: t,
        }
    }

    fn even_gen(ring: &Ring, idx: usize) -> Class {
        let mut m = ring.one_monomial();
        m.even[idx] = 1;
        Class::from_terms(ring, [(m, ring.field.one())])
    }

    pub fn t(ring: &Ring, i: usize) -> Class {
        assert!(i < ring.n_t);
        Class::even_gen(ring, ring.t_index(i))
    }

    pub fn v(ring: &Ring, j: usize) -> Class {
        assert!(j < ring.n_v);
        Class::even_gen(ring, ring.v_index(j))
    }

    pub fn u(ring: &Ring, j: usize) -> Class {
        assert!(j < ring.n_v);
        let mut m = ring.one_monomial();
        m.odd = 1 << j;
        Class::from_terms(ring, [(m, ring.field.one())])
    }

    pub fn tau(ring: &Ring) -> Class {
        Class::even_gen(ring, ring.tau_index().expect("ring has tau"))
    }

    pub fn zeta(ring: &Ring) -> Class {
        Class::even_gen(ring, ring.zeta_index().expect("model ring"))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.odd == 0 && m.even.iter().all(|&e| e == 0))
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&self.ring.one_monomial())
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn check_same(&self, other: &Class) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "classes in different rings"
        );
    }

    pub fn add(&self, other: &Class) -> Class {
        self.check_same(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Class {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Class {
        Class {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Class) -> Class {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Class {
        let mut terms = Terms::new();
        for (m, a) in &self.terms {
            add_term(&mut terms, m.clone(), a * c);
        }
        Class {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Class) -> Class {
        self.check_same(other);
        let mut terms = Terms::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((m, neg)) = self.ring.mul_monomials(a, b) {
                    let c = x * y;
                    add_term(&mut terms, m, if neg { -c } else { c });
                }
            }
        }
        self.ring.reduce(&mut terms);
        Class {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Class {
        let mut acc = Class::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Bidegree of a monomial.
    pub fn monomial_bidegree(ring: &RingData, m: &GMonomial) -> (i64, i64) {
        let tau = ring.tau_index();
        let mut a = 0i64;
        let mut b = 0i64;
        for (i, &e) in m.even.iter().enumerate() {
            if Some(i) == tau {
                b += e as i64;
            } else {
                a += 2 * e as i64;
                b += e as i64;
            }
        }
        let k = m.odd.count_ones() as i64;
        (a + k, b + k)
    }

    /// The common bidegree of all terms, if the class is nonzero and homogeneous.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| Class::monomial_bidegree(&self.ring, m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Bidegree-homogeneous components.
    pub fn components(&self) -> BTreeMap<(i64, i64), Class> {
        let mut out: BTreeMap<(i64, i64), Class> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = Class::monomial_bidegree(&self.ring, m);
            out.entry(d)
                .or_insert_with(|| Class::zero(&self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Splits off the exterior part: even polynomial coefficient of each odd mask.
    pub(crate) fn even_parts(&self) -> BTreeMap<u64, Poly> {
        let n = self.ring.num_even();
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.odd)
                .or_insert_with(|| Poly::zero(self.ring.field, n))
                .add_term(Monomial(m.even.clone()), c.clone());
        }
        out
    }

    pub(crate) fn from_even_parts(ring: &Ring, parts: &BTreeMap<u64, Poly>) -> Class {
        let mut terms = Terms::new();
        for (odd, p) in parts {
            for (m, c) in p.terms() {
                add_term(
                    &mut terms,
                    GMonomial {
                        even: m.0.clone(),
                        odd: *odd,
                    },
                    c.clone(),
                );
            }
        }
        ring.reduce(&mut terms);
        Class {
            ring: ring.clone(),
            terms,
        }
    }

    /// The even polynomial of a class without exterior part.
    pub(crate) fn as_even_poly(&self) -> Option<Poly> {
        let parts = self.even_parts();
        match parts.len() {
            0 => Some(Poly::zero(self.ring.field, self.ring.num_even())),
            1 => parts.get(&0).cloned(),
            _ => None,
        }
    }

    /// `self / ℓ` for a class `ℓ` without exterior part, when the division is
    /// exact on coordinates. In a model ring the reduced representative is
    /// the coordinate vector over the point ring, so this decides
    /// divisibility for any `ℓ` from the point ring.
    pub fn divide_exact(&self, l: &Class) -> Option<Class> {
        self.check_same(l);
        let d = l.as_even_poly()?;
        if d.is_zero() {
            return None;
        }
        let mut parts = BTreeMap::new();
        for (odd, p) in self.even_parts() {
            parts.insert(odd, p.divide_exact(&d)?);
        }
        Some(Class::from_even_parts(&self.ring, &parts))
    }

    /// Ring map determined by images of the even and odd generators; odd
    /// generators must go to odd classes. The result is reduced in `target`.
    pub fn substitute(&self, target: &Ring, even: &[Class], odd: &[Class]) -> Class {
        assert_eq!(even.len(), self.ring.num_even());
        assert_eq!(odd.len(), self.ring.n_v);
        let mut out = Class::zero(target);
        let mut pow_cache: BTreeMap<(usize, u32), Class> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Class::constant(target, c.clone());
            for (i, &e) in m.even.iter().enumerate() {
                if e > 0 {
                    let p = pow_cache
                        .entry((i, e))
                        .or_insert_with(|| even[i].pow(e))
                        .clone();
                    t = t.mul(&p);
                }
            }
            let mut rest = m.odd;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                t = t.mul(&odd[j]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Moves the class into a ring with the same base generators, adding or
    /// dropping the `ζ` slot. Dropping requires the class to be free of `ζ`.
    pub fn convert(&self, target: &Ring) -> Result<Class> {
        if !self.ring.same_base(target) {
            return Err(Error::invalid("classes over different point rings"));
        }
        let from_zeta = self.ring.zeta_index();
        let to_zeta = target.zeta_index();
        let base_len = self.ring.n_t + self.ring.n_v + usize::from(self.ring.has_tau());
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            let z = from_zeta.map_or(0, |i| m.even[i]);
            if z > 0 && to_zeta.is_none() {
                return Err(Error::invalid("class involves z and cannot move to the point ring"));
            }
            let mut even = m.even[..base_len].to_vec();
            if to_zeta.is_some() {
                even.push(z);
            }
            add_term(&mut terms, GMonomial { even, odd: m.odd }, c.clone());
        }
        target.reduce(&mut terms);
        Ok(Class {
            ring: target.clone(),
            terms,
        })
    }

    /// Coefficient of `ζ^i` in the reduced form, as a class in `base`.
    pub fn zeta_coefficient(&self, i: u32, base: &Ring) -> Result<Class> {
        let z = self.ring.zeta_index().ok_or_else(|| Error::invalid("not a model ring class"))?;
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            if m.even[z] == i {
                let mut m = m.clone();
                m.even[z] = 0;
                terms.insert(m, c.clone());
            }
        }
        Class {
            ring: self.ring.clone(),
            terms,
        }
        .convert(base)
    }

    pub fn to_string_with(&self, even_names: &[String], odd_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut ordered: Vec<(&GMonomial, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| {
            let da = Class::monomial_bidegree(&self.ring, a.0);
            let db = Class::monomial_bidegree(&self.ring, b.0);
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in ordered.into_iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.even.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(even_names[i].clone()),
                    _ => factors.push(format!("{}^{e}", even_names[i])),
                }
            }
            for (j, name) in odd_names.iter().enumerate() {
                if m.odd & (1 << j) != 0 {
                    factors.push(name.clone());
                }
            }
            let (neg, mag) = signed(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == "1";
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if !unit {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Sign and magnitude for display; prime-field elements use the symmetric
/// range so that `p − 1` prints as `−1`.
fn signed(c: &Scalar) -> (bool, String) {
    match c {
        Scalar::Rat(_) => {
            if c.is_negative() {
                (true, (-c).to_string())
            } else {
                (false, c.to_string())
            }
        }
        Scalar::Mod { value, modulus } => {
            if *value > modulus / 2 {
                (true, (modulus - value).to_string())
            } else {
                (false, value.to_string())
            }
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (even, odd) = self.ring.names();
        write!(f, "{}", self.to_string_with(&even, &odd))
    }
}

/// Options for building a point ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PointRingOptions {
    /// Coefficient field when the group is a torus; defaults to `ℚ`.
    pub field: Option<Field>,
    pub u_square: USquare,
}

/// `H^{*,*}_G(pt)` for `G = D(ℤ^r ⊕ (ℤ/p)^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRing {
    ring: Ring,
    prime: Option<u64>,
    notes: Vec<String>,
}

impl PointRing {
    pub fn new(lattice: &CharacterLattice, options: PointRingOptions) -> Result<Self> {
        let orders = lattice.torsion_orders();
        let mut prime = None;
        for m in orders {
            let m64 = m
                .to_u64()
                .filter(|&m| is_prime(m))
                .ok_or_else(|| Error::UnsupportedGroup(format!("torsion order {m} is not a prime")))?;
            match prime {
                None => prime = Some(m64),
                Some(p) if p == m64 => {}
                Some(p) => {
                    return Err(Error::UnsupportedGroup(format!(
                        "torsion of mixed primes {p} and {m64}"
                    )))
                }
            }
        }
        let field = match (prime, options.field) {
            (Some(p), None) => Field::Prime(p),
            (Some(p), Some(f)) if f == Field::Prime(p) => f,
            (Some(p), Some(f)) => {
                return Err(Error::FieldMismatch(format!(
                    "torsion of order {p} needs coefficients in F_{p}, not {f}"
                )))
            }
            (None, f) => f.unwrap_or(Field::Rational),
        };
        let mut notes = Vec::new();
        match (options.u_square, prime) {
            (USquare::TauV, Some(2)) => {}
            (USquare::TauV, _) => {
                return Err(Error::invalid(
                    "u^2 = tau*v is only meaningful for p = 2; for odd p graded commutativity forces u^2 = 0",
                ))
            }
            (USquare::Zero, Some(2)) => {
                notes.push("p = 2: using the relation u^2 = 0 (configurable as u^2 = tau*v)".into())
            }
            _ => {}
        }
        let ring = Arc::new(RingData {
            field,
            lattice: lattice.clone(),
            n_t: lattice.rank(),
            n_v: orders.len(),
            u_square: options.u_square,
            relation: None,
        });
        Ok(PointRing { ring, prime, notes })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.ring.lattice
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    /// The torsion prime, if the group has torsion.
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    /// Runtime remarks about conventions in force.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `e(χ) = Σ a_i t_i + Σ b_j v_j` for `χ = (a; b)`.
    pub fn euler(&self, chi: &Character) -> Result<Class> {
        euler_in(&self.ring, chi)
    }

    pub fn one(&self) -> Class {
        Class::one(&self.ring)
    }
}

/// Euler class of a character in any ring built over the same point ring.
pub(crate) fn euler_in(ring: &Ring, chi: &Character) -> Result<Class> {
    ring.lattice.check(chi)?;
    let f = ring.field;
    let mut terms = Vec::new();
    let coords: Vec<&BigInt> = chi.coords().collect();
    for (i, a) in coords.iter().enumerate() {
        let mut m = ring.one_monomial();
        m.even[i] = 1; // t's then v's, matching the coordinate order
        terms.push((m, f.from_bigint(a)));
    }
    Ok(Class::from_terms(ring, terms))
}

/// Euler class of a representation: the product of the Euler classes of its
/// characters, in bidegree `(2n, n)`.
pub fn euler_class(characters: &[Character], ring: &PointRing) -> Result<Class> {
    let mut acc = ring.one();
    for c in characters {
        acc = acc.mul(&ring.euler(c)?);
    }
    Ok(acc)
}

/// Reads a linear form `Σ a_i t_i + Σ b_j v_j` back as a character. Prime-field
/// coefficients are lifted to `[0, p)`.
pub fn character_of_linear_form(ring: &PointRing, l: &Class) -> Result<Character> {
    let r = &ring.ring;
    let not_linear = || Error::NotEulerClass(format!("{l} is not a linear form in t and v"));
    let p = l.as_even_poly().ok_or_else(not_linear)?;
    let mut coords = vec![BigInt::from(0); r.n_t + r.n_v];
    for (m, c) in p.terms() {
        let idx = match m.0.iter().position(|&e| e > 0) {
            Some(i) if m.degree() == 1 && i < coords.len() => i,
            _ => return Err(not_linear()),
        };
        coords[idx] = c.to_bigint().ok_or_else(|| {
            Error::NotEulerClass(format!("coefficient {c} of {l} is not an integer"))
        })?;
    }
    ring.lattice().character_big(coords)
}

/// Membership in `E_C` of a product of linear forms. Returns the characters
/// of the factors when every factor is a nonzero `e(χ)` with `χ` nontrivial
/// on `C`, and `None` otherwise.
pub fn in_ec(factors: &[Class], ring: &PointRing, sub: &SubgroupPresentation) -> Result<Option<Vec<Character>>> {
    let mut out = Vec::with_capacity(factors.len());
    for l in factors {
        let chi = character_of_linear_form(ring, l)?;
        if l.is_zero() || restrict(&chi, sub)?.is_zero() {
            return Ok(None);
        }
        out.push(chi);
    }
    Ok(Some(out))
}

/// Whether `e(χ)` may be inverted for `C`.
pub fn character_in_ec(ring: &Ring, chi: &Character, sub: &SubgroupPresentation) -> Result<bool> {
    Ok(!restrict(chi, sub)?.is_zero() && !euler_in(ring, chi)?.is_zero())
}
