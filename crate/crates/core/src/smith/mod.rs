//! Steenrod operations on `H_{(μ_p)^n}` of points and projective models, the
//! unstable part of a localization, and the cohomology of the fixed locus
//! recovered from it.
//!
//! The operations form the free algebra on `P^i` with `P^0 = 1`; no Adem
//! relations are imposed. On generators the defaults are `P(v) = v + v^p t`,
//! `P(ζ) = ζ + ζ^p t`, `P(u) = u` and `P(τ) = τ`, extended multiplicatively.

mod unstable;

use std::collections::BTreeMap;

use crate::eqcoh::{Class, LocalizedClass, PointRing, PointRingOptions, ProjectiveModelRing, Ring, USquare};
use crate::error::{Error, Result};
use crate::lattice::{Character, CharacterLattice};
use crate::scalar::Field;

pub use unstable::{
    is_unstable, module_basis, smith_fixed_cohomology, strip_factor, unstable_part, FixedCohomology, ProductEntry,
    UnstableDegree, UnstablePart, Window,
};

/// A truncated total power `Σ_{i≤N} P^i(x) t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalOperationSeries {
    pub coefficients: Vec<Class>,
    pub truncation: usize,
}

impl TotalOperationSeries {
    /// `P^i(x)`; zero beyond the stored coefficients.
    pub fn coefficient(&self, i: usize) -> Class {
        self.coefficients
            .get(i)
            .cloned()
            .unwrap_or_else(|| Class::zero(self.coefficients[0].ring()))
    }
}

pub(crate) type Series = Vec<Class>;

/// Product of two series, dropping powers of `t` above `limit`.
pub(crate) fn series_mul(a: &[Class], b: &[Class], limit: Option<usize>) -> Series {
    let ring = a.first().or(b.first()).expect("nonempty series").ring().clone();
    let mut len = a.len() + b.len() - 1;
    if let Some(n) = limit {
        len = len.min(n + 1);
    }
    let mut out = vec![Class::zero(&ring); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len || x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    trim(out)
}

fn trim(mut s: Series) -> Series {
    while s.len() > 1 && s.last().is_some_and(Class::is_zero) {
        s.pop();
    }
    s
}

/// A point ring or projective model ring for `(μ_p)^n` with a Steenrod action
/// on its generators.
#[derive(Debug, Clone)]
pub struct SteenrodModule {
    point: PointRing,
    model: Option<ProjectiveModelRing>,
    ring: Ring,
    prime: u64,
    even_action: Vec<Series>,
    odd_action: Vec<Series>,
}

impl SteenrodModule {
    /// `H_G(pt)` with the default action.
    pub fn point(point: &PointRing) -> Result<Self> {
        Self::build(point, None)
    }

    /// `H_G(P(V))` with the default action.
    pub fn model(model: &ProjectiveModelRing) -> Result<Self> {
        Self::build(model.point(), Some(model.clone()))
    }

    fn build(point: &PointRing, model: Option<ProjectiveModelRing>) -> Result<Self> {
        let lattice = point.lattice();
        let prime = match point.prime() {
            Some(p) if lattice.rank() == 0 => p,
            _ => {
                return Err(Error::UnsupportedGroup(format!(
                    "Steenrod operations need G = (mu_p)^n, not the group with characters {lattice}"
                )))
            }
        };
        let ring = model.as_ref().map_or_else(|| point.ring().clone(), |m| m.ring().clone());
        let p = prime as u32;
        let tau = ring.tau_index();
        let even_action = (0..ring.num_even())
            .map(|i| {
                let g = even_generator(&ring, i);
                if Some(i) == tau {
                    vec![g]
                } else {
                    vec![g.clone(), g.pow(p)]
                }
            })
            .collect();
        let odd_action = (0..ring.num_v()).map(|j| vec![Class::u(&ring, j)]).collect();
        let module = SteenrodModule {
            point: point.clone(),
            model,
            ring,
            prime,
            even_action,
            odd_action,
        };
        module.validate()?;
        Ok(module)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn point_ring(&self) -> &PointRing {
        &self.point
    }

    pub fn projective_model(&self) -> Option<&ProjectiveModelRing> {
        self.model.as_ref()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn lattice(&self) -> &CharacterLattice {
        self.point.lattice()
    }

    /// Number of `μ_p` factors.
    pub fn rank(&self) -> usize {
        self.ring.num_v()
    }

    /// Overrides `P` on an even generator (slot order `v…, τ?, ζ?`).
    pub fn set_even_action(&mut self, slot: usize, series: Vec<Class>) -> Result<()> {
        if slot >= self.even_action.len() {
            return Err(Error::invalid(format!("no even generator in slot {slot}")));
        }
        let old = std::mem::replace(&mut self.even_action[slot], trim(series));
        self.validate().inspect_err(|_| self.even_action[slot] = old.clone())
    }

    /// Overrides `P` on `u_j`.
    pub fn set_odd_action(&mut self, j: usize, series: Vec<Class>) -> Result<()> {
        if j >= self.odd_action.len() {
            return Err(Error::invalid(format!("no odd generator u{}", j + 1)));
        }
        let old = std::mem::replace(&mut self.odd_action[j], trim(series));
        self.validate().inspect_err(|_| self.odd_action[j] = old.clone())
    }

    /// Checks `P^0 = 1`, bidegrees, unstability on generators (`P^i(x) = 0`
    /// for `2i > a`) and compatibility with the relations of the ring.
    pub fn validate(&self) -> Result<()> {
        let step = self.prime as i64 - 1;
        let gens = (0..self.ring.num_even())
            .map(|i| (even_generator(&self.ring, i), &self.even_action[i]))
            .chain((0..self.ring.num_v()).map(|j| (Class::u(&self.ring, j), &self.odd_action[j])));
        for (g, series) in gens {
            if series.is_empty() || series[0] != g {
                return Err(Error::invalid(format!("P^0 must be the identity on {g}")));
            }
            let (a, b) = g.bidegree().expect("generator");
            for (i, c) in series.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let i64i = i as i64;
                if c.bidegree() != Some((a + 2 * i64i * step, b + i64i * step)) {
                    return Err(Error::invalid(format!("P^{i}({g}) = {c} has the wrong bidegree")));
                }
                if 2 * i64i > a {
                    return Err(Error::invalid(format!(
                        "P^{i}({g}) = {c} is nonzero although 2*{i} exceeds the degree of {g}"
                    )));
                }
            }
        }
        for j in 0..self.ring.num_v() {
            let pu = &self.odd_action[j];
            let lhs = series_mul(pu, pu, None);
            let rhs = match self.ring.u_square() {
                USquare::Zero => vec![Class::zero(&self.ring)],
                USquare::TauV => {
                    let tau = self.ring.tau_index().expect("tau present");
                    series_mul(&self.even_action[tau], &self.even_action[self.ring.v_index(j)], None)
                }
            };
            if trim(lhs) != trim(rhs) {
                return Err(Error::invalid(format!(
                    "the action does not preserve the relation for u{}^2",
                    j + 1
                )));
            }
        }
        if let Some(model) = &self.model {
            let z = self.ring.zeta_index().expect("model ring");
            let mut acc = vec![Class::one(&self.ring)];
            for w in model.weights() {
                let e = self.power_of_class(&model.euler(w)?, None, &mut BTreeMap::new());
                let factor: Series = (0..self.even_action[z].len().max(e.len()))
                    .map(|i| {
                        let a = self.even_action[z].get(i).cloned().unwrap_or_else(|| Class::zero(&self.ring));
                        let b = e.get(i).cloned().unwrap_or_else(|| Class::zero(&self.ring));
                        a.add(&b)
                    })
                    .collect();
                acc = series_mul(&acc, &factor, None);
            }
            if acc.iter().any(|c| !c.is_zero()) {
                return Err(Error::invalid("the action does not preserve the projective relation"));
            }
        }
        Ok(())
    }

    /// `Σ_{i≤N} P^i(x) t^i` via the Cartan formula.
    pub fn total_power(&self, x: &Class, truncation: usize) -> TotalOperationSeries {
        let mut coefficients = self.power_of_class(x, Some(truncation), &mut BTreeMap::new());
        coefficients.resize(truncation + 1, Class::zero(&self.ring));
        TotalOperationSeries {
            coefficients,
            truncation,
        }
    }

    /// The whole (finite) series `P(x)`.
    pub(crate) fn power_of_class(&self, x: &Class, limit: Option<usize>, cache: &mut PowerCache) -> Series {
        let mut total: Series = vec![Class::zero(&self.ring)];
        for (m, c) in x.terms() {
            let mut s: Series = vec![Class::constant(&self.ring, c.clone())];
            for (i, &e) in m.even.iter().enumerate() {
                if e > 0 {
                    let pe = cache
                        .entry((i, e, limit))
                        .or_insert_with(|| series_pow(&self.even_action[i], e, limit))
                        .clone();
                    s = series_mul(&s, &pe, limit);
                }
            }
            let mut rest = m.odd;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                s = series_mul(&s, &self.odd_action[j], limit);
            }
            total = series_add(&total, &s);
        }
        trim(total)
    }

    /// Adds a new `μ_p` factor, acting trivially on the model, in front of the
    /// existing ones. The action on the old generators is carried over.
    pub fn kunneth_extend(&self) -> Result<SteenrodModule> {
        let old = self.lattice();
        let lattice = CharacterLattice::new(0, vec![self.prime as i64; old.dim() + 1])?;
        let point = PointRing::new(
            &lattice,
            PointRingOptions {
                field: None,
                u_square: self.ring.u_square(),
            },
        )?;
        let lift = |c: &Character| -> Result<Character> {
            let mut coords = vec![num_bigint::BigInt::from(0)];
            coords.extend(c.coords().cloned());
            lattice.character_big(coords)
        };
        let mut out = match &self.model {
            None => SteenrodModule::point(&point)?,
            Some(m) => {
                let weights = m.weights().iter().map(lift).collect::<Result<Vec<_>>>()?;
                SteenrodModule::model(&ProjectiveModelRing::new(&point, weights)?)?
            }
        };
        let ring = out.ring.clone();
        let even_images: Vec<Class> = (0..self.ring.num_even()).map(|i| even_generator(&ring, i + 1)).collect();
        let odd_images: Vec<Class> = (0..self.ring.num_v()).map(|j| Class::u(&ring, j + 1)).collect();
        let carry = |s: &Series| -> Series {
            s.iter()
                .map(|c| c.substitute(&ring, &even_images, &odd_images))
                .collect()
        };
        for i in 0..self.ring.num_even() {
            out.even_action[i + 1] = carry(&self.even_action[i]);
        }
        for j in 0..self.ring.num_v() {
            out.odd_action[j + 1] = carry(&self.odd_action[j]);
        }
        out.validate()?;
        Ok(out)
    }
}

pub(crate) type PowerCache = BTreeMap<(usize, u32, Option<usize>), Series>;

fn even_generator(ring: &Ring, slot: usize) -> Class {
    let mut m = crate::eqcoh::GMonomial {
        even: vec![0; ring.num_even()],
        odd: 0,
    };
    m.even[slot] = 1;
    Class::from_terms(ring, [(m, ring.field().one())])
}

fn series_add(a: &[Class], b: &[Class]) -> Series {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn series_pow(s: &[Class], e: u32, limit: Option<usize>) -> Series {
    let mut acc: Series = vec![Class::one(s[0].ring())];
    let mut base: Series = s.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(&acc, &base, limit);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base, limit);
        }
    }
    acc
}

fn mu_p_ring(p: u64) -> Result<PointRing> {
    let lattice = CharacterLattice::new(0, vec![p as i64])?;
    PointRing::new(&lattice, PointRingOptions::default())
}

/// `P^i(v^{-1}) = (−1)^i v^{i(p−1)−1}` in `H_{μ_p}(pt)[v^{-1}]`.
pub fn power_on_inverse(i: u32, p: u64) -> Result<LocalizedClass> {
    let point = mu_p_ring(p)?;
    let ring = point.ring();
    let mut num = Class::v(ring, 0).pow(i * (p as u32 - 1));
    if i % 2 == 1 {
        num = num.neg();
    }
    let canonical = point.lattice().basis_character(0);
    Ok(LocalizedClass::new(
        num,
        BTreeMap::from([(canonical, 1)]),
        &crate::lattice::SubgroupPresentation::whole(point.lattice()),
    )?)
}

/// Coefficients of `P(v)^{-1}` up to `t^N`, by formal inversion of the series
/// `P(v)` in the localized ring: `c_0 = a_0^{-1}`,
/// `c_i = −a_0^{-1} Σ_{k=1}^{i} a_k c_{i−k}`.
pub fn series_inverse_oracle(p: u64, order: usize) -> Result<Vec<LocalizedClass>> {
    let point = mu_p_ring(p)?;
    let module = SteenrodModule::point(&point)?;
    let v = Class::v(point.ring(), 0);
    let a = module.total_power(&v, order).coefficients;
    let canonical = point.lattice().basis_character(0);
    let whole = crate::lattice::SubgroupPresentation::whole(point.lattice());
    let a0_inv = LocalizedClass::new(point.one(), BTreeMap::from([(canonical, 1)]), &whole)?;
    let mut c: Vec<LocalizedClass> = vec![a0_inv.clone()];
    for i in 1..=order {
        let mut acc = LocalizedClass::from_class(Class::zero(point.ring()));
        for k in 1..=i {
            acc = acc.add(&c[i - k].mul_class(&a[k]));
        }
        c.push(acc.mul(&a0_inv).neg());
    }
    Ok(c)
}
