//! Buchberger's algorithm with the coprime and chain criteria.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub order: MonomialOrder,
    /// Maximum number of S-polynomial reductions before giving up.
    pub budget: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            order: MonomialOrder::DegRevLex,
            budget: 50_000,
        }
    }
}

/// Terms sorted strictly decreasing under a fixed order.
#[derive(Debug, Clone)]
struct Sorted {
    terms: Vec<(Monomial, Scalar)>,
}

impl Sorted {
    fn from_poly(p: &Poly, order: MonomialOrder) -> Sorted {
        Sorted {
            terms: p
                .sorted_terms(order)
                .into_iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn to_poly(&self, field: Field, nvars: usize) -> Poly {
        Poly::from_terms(field, nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            let inv = c.inverse().expect("nonzero leading coefficient");
            for (_, a) in &mut self.terms {
                *a = &*a * &inv;
            }
        }
    }

    /// `self - c·m·other`, merging in order.
    fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &Sorted, order: MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, Scalar)> = other
            .terms
            .iter()
            .map(|(k, a)| (k.mul(m), -&(a * c)))
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = match (self.terms.get(i), shifted.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `f` modulo `basis` (all monic): every term of the result
/// is irreducible.
fn reduce(f: &Sorted, basis: &[Sorted], order: MonomialOrder) -> Sorted {
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    let mut p = f.clone();
    while !p.is_zero() {
        let (lm, lc) = p.terms[0].clone();
        let divisor = basis
            .iter()
            .find_map(|g| g.lm().quotient_of(&lm).map(|q| (g, q)));
        match divisor {
            Some((g, q)) => p = p.sub_scaled(&lc, &q, g, order),
            None => {
                rem.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    Sorted { terms: rem }
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: MonomialOrder) -> Sorted {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&lcm).expect("lcm is a multiple");
    let mg = g.lm().quotient_of(&lcm).expect("lcm is a multiple");
    let field_one = f.terms[0].1.field().one();
    let left = Sorted { terms: Vec::new() }.sub_scaled(&(-&field_one), &mf, f, order);
    left.sub_scaled(&field_one, &mg, g, order)
}

/// The reduced Gröbner basis of an ideal, for a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let basis: Vec<Sorted> = self
            .polys
            .iter()
            .map(|p| Sorted::from_poly(p, self.order))
            .collect();
        reduce(&Sorted::from_poly(f, self.order), &basis, self.order).to_poly(self.field, self.nvars)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(
    field: Field,
    nvars: usize,
    gens: &[Poly],
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let order = config.order;
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens {
        if g.field() != field || g.nvars() != nvars {
            return Err(Error::FieldMismatch(
                "generator does not live in the ideal's polynomial ring".into(),
            ));
        }
        let mut s = reduce(&Sorted::from_poly(g, order), &basis, order);
        if !s.is_zero() {
            s.make_monic();
            basis.push(s);
        }
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut reductions = 0usize;

    while let Some(&(i, j)) = pending
        .iter()
        .min_by(|a, b| {
            let la = basis[a.0].lm().lcm(basis[a.1].lm());
            let lb = basis[b.0].lm().lcm(basis[b.1].lm());
            order.cmp(&la, &lb).then(a.cmp(b))
        })
    {
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].lm(), basis[j].lm());
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > config.budget {
            return Err(Error::BudgetExceeded(config.budget));
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    // minimize, then interreduce
    let mut minimal: Vec<Sorted> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && h.lm().divides(g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, h)| h.clone())
            .collect();
        let head = Sorted {
            terms: vec![minimal[k].terms[0].clone()],
        };
        let tail = Sorted {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let tail = reduce(&tail, &others, order);
        let mut g = head;
        g.terms.extend(tail.terms);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(GroebnerBasis {
        field,
        nvars,
        order,
        polys: reduced.iter().map(|s| s.to_poly(field, nvars)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn xy() -> (Poly, Poly) {
        (Poly::var(q(), 2, 0), Poly::var(q(), 2, 1))
    }

    fn gb(gens: &[Poly]) -> GroebnerBasis {
        groebner(q(), 2, gens, &GroebnerConfig::default()).unwrap()
    }

    #[test]
    fn coordinate_ideal() {
        let (x, y) = xy();
        assert_eq!(gb(&[x.clone(), y.clone()]).polys(), &[x, y]);
    }

    #[test]
    fn linear_elimination() {
        let (x, y) = xy();
        assert_eq!(gb(&[&x + &y, y.clone()]).polys(), &[x, y]);
    }

    #[test]
    fn hyperbola_with_axes_is_unit() {
        let (x, y) = xy();
        let one = Poly::one(q(), 2);
        let b = gb(&[&(&x * &y) - &one, x, y]);
        assert!(b.is_unit_ideal());
        assert_eq!(b.polys(), &[one]);
    }

    #[test]
    fn idempotent() {
        let (x, y) = xy();
        let gens = [&(&x * &x) + &(&y * &y), &x * &y];
        let b = gb(&gens);
        let again = gb(b.polys());
        assert_eq!(b, again);
    }

    #[test]
    fn budget_is_enforced() {
        let (x, y) = xy();
        let gens = [&(&x * &x) + &(&y * &y), &(&x * &y) - &Poly::one(q(), 2)];
        let cfg = GroebnerConfig {
            budget: 0,
            ..GroebnerConfig::default()
        };
        assert_eq!(
            groebner(q(), 2, &gens, &cfg).unwrap_err(),
            Error::BudgetExceeded(0)
        );
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        // ⟨y - x², z - x³⟩ in lex with x > y > z eliminates nothing new
        let f = q();
        let x = Poly::var(f, 3, 0);
        let y = Poly::var(f, 3, 1);
        let z = Poly::var(f, 3, 2);
        let cfg = GroebnerConfig {
            order: MonomialOrder::Lex,
            ..GroebnerConfig::default()
        };
        let b = groebner(f, 3, &[&y - &x.pow(2), &z - &x.pow(3)], &cfg).unwrap();
        assert!(b.contains(&(&y.pow(3) - &z.pow(2))));
        assert!(!b.contains(&(&y - &z)));
    }
}
