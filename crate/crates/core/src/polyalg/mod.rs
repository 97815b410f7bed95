//! Exact sparse multivariate polynomials over ℚ and 𝔽_p, lattice gradings,
//! and ideal-theoretic decision procedures built on Gröbner bases.

mod grading;
mod groebner;
mod ideal;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub use grading::{homogeneous_components, Grading};
pub use groebner::{groebner, GroebnerBasis, GroebnerConfig};
pub(crate) use ideal::first_inhomogeneous;
pub use ideal::{ideal_equal, ideal_member, is_homogeneous, Ideal};
pub use parse::{parse_poly, PolyParseError};

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, nvars, Monomial::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::monomial(field, nvars, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: Field, nvars: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Image under the coefficient map into another field.
    pub fn change_field(&self, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(field, self.nvars);
        for (m, c) in &self.terms {
            let c = match c {
                Scalar::Rat(r) => field.from_rational(r)?,
                Scalar::Mod { .. } if c.field() == field => c.clone(),
                Scalar::Mod { .. } => {
                    return Err(Error::FieldMismatch(format!(
                        "cannot map {} coefficients into {field}",
                        self.field
                    )))
                }
            };
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target_vars = images.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, target_vars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_compatible(d);
        let order = MonomialOrder::DegRevLex;
        let (lm, lc) = d.leading_term(order)?;
        let (lm, inv) = (lm.clone(), lc.inverse().expect("nonzero"));
        let mut rest = self.clone();
        let mut q = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = rest.leading_term(order) {
            let shift = lm.quotient_of(m)?;
            let c = c * &inv;
            rest = &rest - &d.mul_monomial(&shift).scale(&c);
            q.add_term(shift, c);
        }
        Some(q)
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    /// Human-readable form using the given variable names, terms in
    /// degree-reverse-lexicographic order.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self
            .poly
            .sorted_terms(MonomialOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_compatible(rhs);
        let mut out = Poly::zero(self.field, self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn degrevlex_orders_ties_by_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex (x > y > z)
        assert_eq!(
            o.cmp(&Monomial(vec![1, 0, 1]), &Monomial(vec![0, 2, 0])),
            Ordering::Less
        );
        assert_eq!(
            o.cmp(&Monomial(vec![2, 0, 0]), &Monomial(vec![0, 1, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn arithmetic_cancels() {
        let x = Poly::var(q(), 2, 0);
        let y = Poly::var(q(), 2, 1);
        let s = &(&x + &y) * &(&x - &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(s, expect);
        assert!((&s - &expect).is_zero());
    }

    #[test]
    fn display_is_stable() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = Poly::var(q(), 2, 0);
        let y = Poly::var(q(), 2, 1);
        let one = Poly::one(q(), 2);
        let p = &(&(&x * &x) * &y) - &one;
        assert_eq!(p.display(&names).to_string(), "x^2*y - 1");
        let p = &(&y.scale(&q().from_i64(-3)) + &x) + &(&x * &y);
        assert_eq!(p.display(&names).to_string(), "x*y + x - 3*y");
    }

    #[test]
    fn change_field_reduces_coefficients() {
        let f5 = Field::prime(5).unwrap();
        let p = Poly::constant(q(), 1, q().from_i64(7));
        assert_eq!(p.change_field(f5).unwrap(), Poly::constant(f5, 1, f5.from_i64(2)));
    }
}
