//! Projective models `P(V)` with a linear action: the ring
//! `H_G(pt)[ζ] / ∏ (ζ + e(χ_j))`, its fixed components, pushforwards and the
//! localization formula.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, SubgroupPresentation};
use crate::polyalg::Poly;
use crate::scalar::Scalar;

use super::{euler_in, Class, LocalizedClass, PointRing, Ring, RingData};

/// `H_G(P(V))` for `V = χ₁ ⊕ … ⊕ χ_n`, as a free module over the point ring
/// with basis `1, ζ, …, ζ^{n−1}`.
#[derive(Debug, Clone)]
pub struct ProjectiveModelRing {
    point: PointRing,
    weights: Vec<Character>,
    ring: Ring,
}

/// Coefficients `c_0 … c_{n−1}` (point ring layout) of `∏ (ζ + e(χ_j))`,
/// omitting the leading 1.
fn relation_coefficients(point: &PointRing, weights: &[Character]) -> Result<Vec<Class>> {
    let mut coeffs = vec![point.one()];
    for w in weights {
        let a = point.euler(w)?;
        let mut next = vec![Class::zero(point.ring()); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].add(&c.mul(&a));
        }
        coeffs = next;
    }
    coeffs.pop();
    Ok(coeffs)
}

impl ProjectiveModelRing {
    pub fn new(point: &PointRing, weights: Vec<Character>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("a projective model needs at least one character"));
        }
        if weights.len() > 64 {
            return Err(Error::invalid("at most 64 characters are supported"));
        }
        let coeffs = relation_coefficients(point, &weights)?;
        let base = point.ring();
        let mut relation = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let terms = c
                .terms()
                .map(|(m, s)| {
                    let mut m = m.clone();
                    m.even.push(0);
                    (m, s.clone())
                })
                .collect();
            relation.push(terms);
        }
        let ring = Arc::new(RingData {
            relation: Some((weights.len() as u32, relation)),
            ..RingData::clone(base)
        });
        Ok(ProjectiveModelRing {
            point: point.clone(),
            weights,
            ring,
        })
    }

    pub fn point(&self) -> &PointRing {
        &self.point
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn zeta(&self) -> Class {
        Class::zeta(&self.ring)
    }

    pub fn one(&self) -> Class {
        Class::one(&self.ring)
    }

    /// A point-ring class pulled back along `P(V) → pt`.
    pub fn pullback(&self, x: &Class) -> Result<Class> {
        x.convert(&self.ring)
    }

    pub fn euler(&self, chi: &Character) -> Result<Class> {
        euler_in(&self.ring, chi)
    }

    /// The relation `∏ (ζ + e(χ_j))` evaluated without reduction, for checks.
    pub fn relation_holds(&self) -> Result<bool> {
        let mut acc = self.one();
        for w in &self.weights {
            acc = acc.mul(&self.zeta().add(&self.euler(w)?));
        }
        Ok(acc.is_zero())
    }
}

/// Pushforward to a point: the coefficient of `ζ^{n−1}`.
pub fn presentation_pushforward(x: &Class, model: &ProjectiveModelRing) -> Result<Class> {
    x.zeta_coefficient(model.dim() as u32 - 1, model.point.ring())
}

/// A component `P(W)` of the `C`-fixed locus, `W` the sum of the `χ_j` with
/// a common restriction to `C`.
#[derive(Debug, Clone)]
pub struct FixedComponent {
    pub restriction: Character,
    pub indices: Vec<usize>,
    pub weights: Vec<Character>,
    /// Index of the character used to name normal weights.
    pub chosen: usize,
    /// `χ_k − χ_chosen` for every `k` outside the component.
    pub normal_weights: Vec<Character>,
    /// Characters `χ_k` for `k` outside the component, in the same order.
    pub outside: Vec<Character>,
    pub model: ProjectiveModelRing,
}

impl FixedComponent {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Restriction `H(P(V)) → H(P(W))`, sending `ζ` to `ζ`.
    pub fn restrict(&self, x: &Class) -> Class {
        Class::from_terms(self.model.ring(), x.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Pushforward `H(P(W)) → H(P(V))`: multiply a lift by `∏_{k∉W} (ζ + e(χ_k))`.
    pub fn pushforward(&self, z: &Class, target: &ProjectiveModelRing) -> Result<Class> {
        let mut acc = Class::from_terms(target.ring(), z.terms().map(|(m, c)| (m.clone(), c.clone())));
        for chi in &self.outside {
            acc = acc.mul(&target.zeta().add(&target.euler(chi)?));
        }
        Ok(acc)
    }

    /// `e(N)^{-1}` in the localized ring of the component:
    /// `∏_k (−1)^{m+1} h_k / ∏_{j∈W} e(χ_k − χ_j)` where
    /// `f_W(ζ) − f_W(−e(χ_k)) = (ζ + e(χ_k))·h_k`.
    pub fn inverse_normal_euler(&self) -> Result<LocalizedClass> {
        let ring = self.model.ring();
        let lattice = self.model.point.lattice().clone();
        let m = self.dim();
        let mut num = Class::one(ring);
        let mut den: BTreeMap<Character, u32> = BTreeMap::new();
        let coeffs = relation_coefficients(&self.model.point, &self.weights)?;
        for chi in &self.outside {
            let a = self.model.point.euler(chi)?;
            let h = synthetic_quotient(&coeffs, &a);
            let mut hz = Class::zero(ring);
            for (i, c) in h.iter().enumerate() {
                hz = hz.add(&c.convert(ring)?.mul(&Class::zeta(ring).pow(i as u32)));
            }
            if m % 2 == 0 {
                hz = hz.neg();
            }
            num = num.mul(&hz);
            for w in &self.weights {
                *den.entry(lattice.sub(chi, w)).or_insert(0) += 1;
            }
        }
        Ok(LocalizedClass::unchecked(num, den))
    }
}

/// Quotient of the monic polynomial `ζ^m + Σ c_i ζ^i` minus its value at
/// `−a`, divided by `ζ + a`; coefficients in ascending order.
fn synthetic_quotient(coeffs: &[Class], a: &Class) -> Vec<Class> {
    let m = coeffs.len();
    let ring = a.ring();
    // full coefficient list, ascending, including the leading 1
    let mut full: Vec<Class> = coeffs.to_vec();
    full.push(Class::one(ring));
    let mut q = vec![Class::zero(ring); m];
    let mut carry = Class::zero(ring);
    for i in (1..=m).rev() {
        carry = full[i].sub(&a.mul(&carry));
        // after the first step carry holds the leading coefficient
        q[i - 1] = carry.clone();
    }
    q
}

/// Groups the characters by their restriction to `C`; components are ordered
/// by first index.
pub fn fixed_components(model: &ProjectiveModelRing, sub: &SubgroupPresentation) -> Result<Vec<FixedComponent>> {
    let lattice = model.point.lattice().clone();
    let mut groups: Vec<(Character, Vec<usize>)> = Vec::new();
    for (j, w) in model.weights.iter().enumerate() {
        let r = restrict(w, sub)?;
        match groups.iter_mut().find(|(g, _)| *g == r) {
            Some((_, idx)) => idx.push(j),
            None => groups.push((r, vec![j])),
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (restriction, indices) in groups {
        let weights: Vec<Character> = indices.iter().map(|&j| model.weights[j].clone()).collect();
        let chosen = indices[0];
        let outside: Vec<Character> = (0..model.dim())
            .filter(|k| !indices.contains(k))
            .map(|k| model.weights[k].clone())
            .collect();
        let normal_weights = outside.iter().map(|c| lattice.sub(c, &model.weights[chosen])).collect();
        let comp_model = ProjectiveModelRing::new(&model.point, weights.clone())?;
        out.push(FixedComponent {
            restriction,
            indices,
            weights,
            chosen,
            normal_weights,
            outside,
            model: comp_model,
        });
    }
    Ok(out)
}

/// `π_*(x)` computed from the `G`-fixed components:
/// `Σ_W π_{W*}(x|_W · e(N_W)^{-1})`.
pub fn bott_pushforward(x: &Class, model: &ProjectiveModelRing) -> Result<LocalizedClass> {
    let whole = SubgroupPresentation::whole(model.point.lattice());
    let base = model.point.ring();
    let mut total = LocalizedClass::from_class(Class::zero(base));
    for comp in fixed_components(model, &whole)? {
        let inv = comp.inverse_normal_euler()?;
        let local = comp.restrict(x).mul(inv.numerator());
        let pushed = presentation_pushforward(&local, &comp.model)?;
        let term = LocalizedClass::new(pushed, inv.denominator().clone(), &whole)?;
        total = total.add(&term);
    }
    Ok(total)
}

/// `Σ_W i_{W*}(e(N_W)^{-1})` over the `C`-fixed components; equals 1 in the
/// localized ring.
pub fn fixed_locus_unit(model: &ProjectiveModelRing, sub: &SubgroupPresentation) -> Result<LocalizedClass> {
    let mut total = LocalizedClass::from_class(Class::zero(model.ring()));
    for comp in fixed_components(model, sub)? {
        let inv = comp.inverse_normal_euler()?;
        let pushed = comp.pushforward(inv.numerator(), model)?;
        total = total.add(&LocalizedClass::new(pushed, inv.denominator().clone(), sub)?);
    }
    Ok(total)
}

/// Outcome of checking that restriction to the `C`-fixed locus becomes an
/// isomorphism once `E_C` is inverted.
#[derive(Debug, Clone)]
pub struct ConcentrationReport {
    pub components: Vec<FixedComponent>,
    /// Determinant of the restriction map in the monomial bases.
    pub determinant: Class,
    /// Euler-class factors of the determinant with multiplicities.
    pub factors: Vec<(Character, u32)>,
    /// What is left after removing the factors.
    pub unit: Scalar,
    pub invertible: bool,
}

impl ConcentrationReport {
    /// Largest multiplicity of factors lying on a common line of characters
    /// (characters with proportional Euler classes).
    pub fn max_factor_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, k)| *k).max().unwrap_or(0)
    }
}

/// Restriction matrix to the `C`-fixed components, its determinant and the
/// factorization of that determinant into elements of `E_C`.
pub fn concentration_check(model: &ProjectiveModelRing, sub: &SubgroupPresentation) -> Result<ConcentrationReport> {
    let components = fixed_components(model, sub)?;
    let base = model.point.ring();
    let n = model.dim();
    let nvars = base.num_even();
    let field = base.field();
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for comp in &components {
        let images: Vec<Class> = (0..n).map(|k| comp.restrict(&model.zeta().pow(k as u32))).collect();
        for i in 0..comp.dim() {
            let mut row = Vec::with_capacity(n);
            for img in &images {
                let c = img.zeta_coefficient(i as u32, base)?;
                row.push(c.as_even_poly().ok_or_else(|| Error::invariant("odd entry in restriction matrix"))?);
            }
            rows.push(row);
        }
    }
    let det = bareiss_determinant(rows, field, nvars);
    let determinant = Class::from_even_parts(base, &BTreeMap::from([(0u64, det.clone())]));

    let lattice = model.point.lattice().clone();
    let mut candidates: Vec<Character> = Vec::new();
    for (a, ca) in components.iter().enumerate() {
        for cb in &components[a + 1..] {
            for j in &ca.weights {
                for k in &cb.weights {
                    candidates.push(lattice.sub(k, j));
                }
            }
        }
    }
    let mut rest = det;
    let mut found: BTreeMap<Character, u32> = BTreeMap::new();
    let mut try_divide = |rest: &mut Poly, chi: &Character| -> Result<bool> {
        let e = euler_in(base, chi)?.as_even_poly().expect("linear form");
        if e.is_zero() || restrict(chi, sub)?.is_zero() {
            return Ok(false);
        }
        match rest.divide_exact(&e) {
            Some(q) if !rest.is_zero() => {
                *rest = q;
                *found.entry(chi.clone()).or_insert(0) += 1;
                Ok(true)
            }
            _ => Ok(false),
        }
    };
    for chi in &candidates {
        try_divide(&mut rest, chi)?;
    }
    let mut progress = true;
    while progress && !rest.is_constant() {
        progress = false;
        for chi in &candidates {
            if try_divide(&mut rest, chi)? {
                progress = true;
            }
        }
    }
    let (factors, scale) = group_by_line(&found, base);
    let (unit, invertible) = if rest.is_constant() && !rest.is_zero() {
        let c = rest.terms().next().map(|(_, c)| c.clone()).expect("nonzero constant");
        (&c * &scale, true)
    } else {
        (field.zero(), false)
    };
    Ok(ConcentrationReport {
        components,
        determinant,
        factors,
        unit,
        invertible,
    })
}

/// Merges factors whose Euler classes are proportional, keeping the first
/// character of each line. Returns the scalar `∏ r^k` picked up by rewriting
/// `e(χ) = r·e(χ_line)`.
fn group_by_line(found: &BTreeMap<Character, u32>, base: &Ring) -> (Vec<(Character, u32)>, Scalar) {
    let mut out: Vec<(Character, Poly, u32)> = Vec::new();
    let mut scale = base.field().one();
    for (chi, &k) in found {
        let e = euler_in(base, chi).expect("checked").as_even_poly().expect("linear form");
        match out.iter_mut().find_map(|(_, f, n)| ratio(f, &e).map(|r| (n, r))) {
            Some((n, r)) => {
                *n += k;
                scale = &scale * &r.pow(k);
            }
            None => out.push((chi.clone(), e, k)),
        }
    }
    (out.into_iter().map(|(c, _, k)| (c, k)).collect(), scale)
}

/// `r` with `r·a = b`, if `a` and `b` are proportional.
fn ratio(a: &Poly, b: &Poly) -> Option<Scalar> {
    let (m, ca) = a.terms().next()?;
    let cb = b.coefficient(m);
    if cb.is_zero() {
        return None;
    }
    let r = &cb * &ca.inverse().expect("nonzero");
    (&a.scale(&r) == b).then_some(r)
}

/// Fraction-free elimination; every division is exact in the polynomial ring.
fn bareiss_determinant(mut m: Vec<Vec<Poly>>, field: crate::scalar::Field, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(field, nvars);
    }
    let mut sign = false;
    let mut prev = Poly::one(field, nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(field, nvars);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.divide_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(field, nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}
