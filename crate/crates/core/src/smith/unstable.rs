//! Unstable elements of `M[E_C^{-1}]` in a finite window of bidegrees.
//!
//! For `y = x / D` with `D = ∏ ℓ_k` a product of Euler classes,
//! `P(D) = D·f(t)` where `f = ∏ (1 + ℓ_k^{p−1} t)`, so
//! `P(y) = (P(x)·f^{-1}) / D`. Unstable elements of the localization are the
//! cohomology of the fixed locus, generated by classes with `P^i = 0` for
//! `2i > a`; hence `y` of bidegree `(a, b)` is unstable exactly when the
//! truncation `g = [P(x)·f^{-1}]_{≤⌊a/2⌋}` satisfies `g·f = P(x)`. That is an
//! `𝔽_p`-linear condition on `x`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::eqcoh::{concentration_check, euler_in, Class, GMonomial, LocalizedClass};
use crate::error::{Error, Result};
use crate::lattice::{restrict, Character, SubgroupPresentation};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{series_mul, PowerCache, Series, SteenrodModule};

/// Inclusive bidegree range `a0..a1, b0..b1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub a0: i64,
    pub a1: i64,
    pub b0: i64,
    pub b1: i64,
}

/// Largest extent accepted in either direction.
const MAX_WINDOW_SPAN: i64 = 256;

impl Window {
    pub fn new(a0: i64, a1: i64, b0: i64, b1: i64) -> Result<Self> {
        if a0 > a1 || b0 > b1 {
            return Err(Error::WindowNotCertified(format!("empty window {a0}..{a1},{b0}..{b1}")));
        }
        if a1 - a0 > MAX_WINDOW_SPAN || b1 - b0 > MAX_WINDOW_SPAN || a1.abs() > MAX_WINDOW_SPAN {
            return Err(Error::WindowNotCertified(format!(
                "window {a0}..{a1},{b0}..{b1} exceeds the supported span {MAX_WINDOW_SPAN}"
            )));
        }
        Ok(Window { a0, a1, b0, b1 })
    }

    pub fn contains(&self, (a, b): (i64, i64)) -> bool {
        (self.a0..=self.a1).contains(&a) && (self.b0..=self.b1).contains(&b)
    }

    /// Bidegrees in lexicographic order.
    pub fn bidegrees(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.a0..=self.a1).flat_map(move |a| (self.b0..=self.b1).map(move |b| (a, b)))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{},{}..{}", self.a0, self.a1, self.b0, self.b1)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("window `{s}` is not of the form a0..a1,b0..b1"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let range = |r: &str| -> Result<(i64, i64)> {
            let (lo, hi) = r.trim().split_once("..").ok_or_else(bad)?;
            Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
        };
        let (a0, a1) = range(a)?;
        let (b0, b1) = range(b)?;
        Window::new(a0, a1, b0, b1)
    }
}

/// Monomial basis of the module in bidegree `(a, b)`: `v^α ζ^i u_S` with
/// `|α| + i = a − b`, `|S| = 2b − a` and `i` below the relation degree.
pub fn module_basis(module: &SteenrodModule, (a, b): (i64, i64)) -> Vec<Class> {
    basis_monomials(module, (a, b))
        .into_iter()
        .map(|m| Class::from_terms(module.ring(), [(m, module.field().one())]))
        .collect()
}

fn basis_monomials(module: &SteenrodModule, (a, b): (i64, i64)) -> Vec<GMonomial> {
    let ring = module.ring();
    let n = ring.num_v();
    let (e, s) = (a - b, 2 * b - a);
    if e < 0 || s < 0 || s > n as i64 {
        return Vec::new();
    }
    let (e, s) = (e as u32, s as u32);
    let zeta_cap = ring.zeta_degree().map_or(0, |d| d - 1);
    let mut evens: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; ring.num_even()];
    compositions(&mut cur, 0, e, ring.zeta_index(), zeta_cap, &mut evens);
    let odds: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == s).collect();
    let mut out = Vec::with_capacity(evens.len() * odds.len());
    for ev in &evens {
        for &o in &odds {
            out.push(GMonomial {
                even: ev.clone(),
                odd: o,
            });
        }
    }
    out
}

fn compositions(cur: &mut Vec<u32>, slot: usize, left: u32, zeta: Option<usize>, zeta_cap: u32, out: &mut Vec<Vec<u32>>) {
    if slot == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let cap = if Some(slot) == zeta { left.min(zeta_cap) } else { left };
    for k in 0..=cap {
        cur[slot] = k;
        compositions(cur, slot + 1, left - k, zeta, zeta_cap, out);
    }
    cur[slot] = 0;
}

fn coordinates(x: &Class, index: &BTreeMap<GMonomial, usize>) -> Result<Vec<Scalar>> {
    let mut v = vec![x.ring().field().zero(); index.len()];
    for (m, c) in x.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::invariant("class has a monomial outside the expected bidegree"))?;
        v[*i] = c.clone();
    }
    Ok(v)
}

fn from_coordinates(basis: &[Class], coeffs: &[Scalar]) -> Class {
    let mut acc = Class::zero(basis[0].ring());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Denominator data: the multiset of characters and the series `f^{±1}`.
struct Denominator {
    factors: Vec<(Character, u32)>,
    weight: i64,
    f: Series,
    /// Prefix of `f^{-1}` computed so far.
    inv: RefCell<Series>,
}

impl Denominator {
    fn new(module: &SteenrodModule, factors: &[(Character, u32)]) -> Result<Self> {
        let ring = module.ring();
        let p = module.prime() as u32;
        let mut f: Series = vec![Class::one(ring)];
        let mut weight = 0;
        for (chi, k) in factors {
            let l = euler_in(ring, chi)?;
            if l.is_zero() {
                return Err(Error::DenominatorNotInEc(format!("e{chi} = 0")));
            }
            let step = vec![Class::one(ring), l.pow(p - 1)];
            for _ in 0..*k {
                f = series_mul(&f, &step, None);
            }
            weight += *k as i64;
        }
        Ok(Denominator {
            factors: factors.iter().filter(|(_, k)| *k > 0).cloned().collect(),
            weight,
            f,
            inv: RefCell::new(vec![Class::one(ring)]),
        })
    }

    fn as_map(&self) -> BTreeMap<Character, u32> {
        let mut out = BTreeMap::new();
        for (c, k) in &self.factors {
            *out.entry(c.clone()).or_insert(0) += k;
        }
        out
    }

    /// `f^{-1}` truncated at `t^d`; `f` has constant term 1.
    fn inverse(&self, d: usize) -> Series {
        let ring = self.f[0].ring();
        let mut c = self.inv.borrow_mut();
        for i in c.len()..=d {
            let mut acc = Class::zero(ring);
            for k in 1..=i.min(self.f.len() - 1) {
                acc = acc.add(&self.f[k].mul(&c[i - k]));
            }
            c.push(acc.neg());
        }
        c[..=d].to_vec()
    }
}

/// Elements `x` of bidegree `(a, b) + deg D` with `x / D` unstable.
fn unstable_numerators(
    module: &SteenrodModule,
    den: &Denominator,
    (a, b): (i64, i64),
    cache: &mut PowerCache,
) -> Result<Vec<Class>> {
    let shifted = (a + 2 * den.weight, b + den.weight);
    let basis = module_basis(module, shifted);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let residuals: Vec<Series> = basis
        .iter()
        .map(|x| instability_residual(module, den, x, a, cache))
        .collect();
    let mut index: BTreeMap<(usize, GMonomial), usize> = BTreeMap::new();
    for r in &residuals {
        for (i, c) in r.iter().enumerate() {
            for (m, _) in c.terms() {
                let next = index.len();
                index.entry((i, m.clone())).or_insert(next);
            }
        }
    }
    let field = module.field();
    let mut rows = vec![vec![field.zero(); basis.len()]; index.len()];
    for (col, r) in residuals.iter().enumerate() {
        for (i, c) in r.iter().enumerate() {
            for (m, s) in c.terms() {
                rows[index[&(i, m.clone())]][col] = s.clone();
            }
        }
    }
    let kernel = Matrix::from_rows(field, basis.len(), rows).kernel();
    Ok(kernel.iter().map(|k| from_coordinates(&basis, k)).collect())
}

/// `g·f − P(x)` with `g = [P(x)·f^{-1}]_{≤⌊a/2⌋}`; zero iff `x / D` is unstable.
fn instability_residual(module: &SteenrodModule, den: &Denominator, x: &Class, a: i64, cache: &mut PowerCache) -> Series {
    let px = module.power_of_class(x, None, cache);
    let g: Series = if a < 0 {
        vec![Class::zero(module.ring())]
    } else {
        let d = (a / 2) as usize;
        series_mul(&px, &den.inverse(d), Some(d))
    };
    let gf = series_mul(&g, &den.f, None);
    let n = gf.len().max(px.len());
    (0..n)
        .map(|i| {
            let l = gf.get(i).cloned().unwrap_or_else(|| Class::zero(module.ring()));
            let r = px.get(i).cloned().unwrap_or_else(|| Class::zero(module.ring()));
            l.sub(&r)
        })
        .collect()
}

/// Decides whether a fraction is unstable; each homogeneous component is
/// tested separately.
pub fn is_unstable(module: &SteenrodModule, y: &LocalizedClass) -> Result<bool> {
    let factors: Vec<(Character, u32)> = y.denominator().iter().map(|(c, k)| (c.clone(), *k)).collect();
    let den = Denominator::new(module, &factors)?;
    let mut cache = PowerCache::new();
    for ((a, _), x) in y.numerator().components() {
        let r = instability_residual(module, &den, &x, a - 2 * den.weight, &mut cache);
        if r.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divides `x` by `e(χ)` following a change of character coordinates: with
/// `e(χ) = Σ b_j v_j` and `b_{j₀} ≠ 0`, the substitution taking `e(χ)` to
/// `v_{j₀}` (and `Σ b_j u_j` to `u_{j₀}`) is invertible over `𝔽_p`. In the new
/// coordinates each coordinate of `x` over the basis `ζ^i` is expanded in
/// powers of `v_{j₀}`; the division exists iff the `v_{j₀}^{-1}` part of
/// `x / v_{j₀}` vanishes, i.e. no term is free of `v_{j₀}`.
pub fn strip_factor(module: &SteenrodModule, x: &Class, chi: &Character) -> Result<Option<Class>> {
    let point = module.point_ring().ring().clone();
    let field = module.field();
    let n = point.num_v();
    let coeffs: Vec<Scalar> = chi.coords().map(|c| field.from_bigint(c)).collect();
    let j0 = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::DenominatorNotInEc(format!("e{chi} = 0")))?;
    let inv = coeffs[j0].inverse().expect("nonzero");
    // old generators in terms of new: g_{j0} = b_{j0}^{-1}(g'_{j0} − Σ_{j≠j0} b_j g'_j)
    let to_new = |gen: &dyn Fn(usize) -> Class| -> Vec<Class> {
        (0..n)
            .map(|j| {
                if j != j0 {
                    return gen(j);
                }
                let mut acc = gen(j0);
                for (k, b) in coeffs.iter().enumerate() {
                    if k != j0 && !b.is_zero() {
                        acc = acc.sub(&gen(k).scale(b));
                    }
                }
                acc.scale(&inv)
            })
            .collect()
    };
    let to_old = |gen: &dyn Fn(usize) -> Class| -> Vec<Class> {
        (0..n)
            .map(|j| {
                if j != j0 {
                    return gen(j);
                }
                let mut acc = Class::zero(&point);
                for (k, b) in coeffs.iter().enumerate() {
                    acc = acc.add(&gen(k).scale(b));
                }
                acc
            })
            .collect()
    };
    let v = |j: usize| Class::v(&point, j);
    let u = |j: usize| Class::u(&point, j);
    let (new_v, new_u) = (to_new(&v), to_new(&u));
    let (old_v, old_u) = (to_old(&v), to_old(&u));

    let ring = module.ring();
    let slots = ring.zeta_degree().unwrap_or(1);
    let mut out = Class::zero(ring);
    for i in 0..slots {
        let c = if ring.has_zeta() {
            x.zeta_coefficient(i, &point)?
        } else {
            x.clone()
        };
        let c_new = c.substitute(&point, &new_v, &new_u);
        let mut lowered = Vec::new();
        for (m, s) in c_new.terms() {
            if m.even[point.v_index(j0)] == 0 {
                return Ok(None);
            }
            let mut m = m.clone();
            m.even[point.v_index(j0)] -= 1;
            lowered.push((m, s.clone()));
        }
        let q = Class::from_terms(&point, lowered).substitute(&point, &old_v, &old_u);
        let mut q = q.convert(ring)?;
        if ring.has_zeta() {
            q = q.mul(&Class::zeta(ring).pow(i));
        }
        out = out.add(&q);
    }
    Ok(Some(out))
}

/// Unstable elements found in one bidegree.
#[derive(Debug, Clone)]
pub struct UnstableDegree {
    pub bidegree: (i64, i64),
    /// Dimension of the unlocalized module in this bidegree.
    pub module_rank: usize,
    /// A basis of the unstable elements with the given denominator.
    pub elements: Vec<LocalizedClass>,
    /// Each element divided out factor by factor, when every step succeeds.
    pub lifted: Vec<Option<Class>>,
}

/// The unstable part over a window.
#[derive(Debug, Clone)]
pub struct UnstablePart {
    pub window: Window,
    pub denominators: Vec<(Character, u32)>,
    pub degrees: Vec<UnstableDegree>,
}

impl UnstablePart {
    /// Whether the unstable elements are exactly the unlocalized module in
    /// every bidegree of the window.
    pub fn coincides_with_module(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.elements.len() == d.module_rank && d.lifted.iter().all(Option::is_some))
    }
}

/// Unstable elements `x / ∏ e(χ)^k` in each bidegree of the window, each then
/// divided back into the module one linear factor at a time.
pub fn unstable_part(
    module: &SteenrodModule,
    denominators: &[(Character, u32)],
    sub: &SubgroupPresentation,
    window: &Window,
) -> Result<UnstablePart> {
    for (chi, _) in denominators {
        module.lattice().check(chi)?;
        if restrict(chi, sub)?.is_zero() {
            return Err(Error::DenominatorNotInEc(format!("{chi} restricts trivially to the subgroup")));
        }
    }
    let den = Denominator::new(module, denominators)?;
    let mut cache = PowerCache::new();
    let mut degrees = Vec::new();
    for deg in window.bidegrees() {
        let xs = unstable_numerators(module, &den, deg, &mut cache)?;
        let mut elements = Vec::with_capacity(xs.len());
        let mut lifted = Vec::with_capacity(xs.len());
        for x in xs {
            let mut cur = Some(x.clone());
            for (chi, k) in den.factors.iter().rev() {
                for _ in 0..*k {
                    cur = match cur {
                        Some(c) => strip_factor(module, &c, chi)?,
                        None => None,
                    };
                }
            }
            elements.push(LocalizedClass::new(x, den.as_map(), sub)?);
            lifted.push(cur);
        }
        degrees.push(UnstableDegree {
            bidegree: deg,
            module_rank: module_basis(module, deg).len(),
            elements,
            lifted,
        });
    }
    Ok(UnstablePart {
        window: *window,
        denominators: den.factors.clone(),
        degrees,
    })
}

/// `g_left · g_right` expressed in the generators of its bidegree, modulo
/// decomposables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub result: Vec<(usize, Scalar)>,
}

/// `H(X^G) = 𝔽_p ⊗_{H_G(pt)} Un(M[E_G^{-1}])` over a window.
#[derive(Debug, Clone)]
pub struct FixedCohomology {
    pub prime: u64,
    pub window: Window,
    /// `D` such that the unstable part lies in `D^{-1}·M`.
    pub denominator: Vec<(Character, u32)>,
    /// Dimension over `𝔽_p` per bidegree, omitting zeros.
    pub ranks: BTreeMap<(i64, i64), usize>,
    pub generators: Vec<((i64, i64), LocalizedClass)>,
    pub products: Vec<ProductEntry>,
}

impl FixedCohomology {
    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }
}

struct Level<'a> {
    module: &'a SteenrodModule,
    den: Denominator,
    cache: PowerCache,
    computed: BTreeMap<(i64, i64), Vec<Class>>,
}

impl Level<'_> {
    fn numerators(&mut self, deg: (i64, i64)) -> Result<Vec<Class>> {
        if let Some(v) = self.computed.get(&deg) {
            return Ok(v.clone());
        }
        let v = unstable_numerators(self.module, &self.den, deg, &mut self.cache)?;
        self.computed.insert(deg, v.clone());
        Ok(v)
    }

    fn shifted(&self, (a, b): (i64, i64)) -> (i64, i64) {
        (a + 2 * self.den.weight, b + self.den.weight)
    }
}

/// Smith theory for `G = (μ_p)^n`: the unstable part of `M[E_G^{-1}]`,
/// tensored down to `𝔽_p`.
///
/// The unstable part is computed inside `D^{-1}·M`. For a projective model,
/// restriction to the fixed components is injective with determinant `Δ`, a
/// product of Euler classes, so the unstable part (the cohomology of the
/// fixed locus) lies in `Δ^{-1}·M`; `D` collects the factors of `Δ` by line.
/// The bound is cross-checked against `D·ℓ` for an extra factor `ℓ`.
pub fn smith_fixed_cohomology(module: &SteenrodModule, window: &Window) -> Result<FixedCohomology> {
    let lattice = module.lattice().clone();
    let whole = SubgroupPresentation::whole(&lattice);
    let factors = match module.projective_model() {
        Some(model) => {
            let report = concentration_check(model, &whole)?;
            if !report.invertible {
                return Err(Error::invariant("restriction to the fixed locus is not invertible after localization"));
            }
            report.factors
        }
        None => Vec::new(),
    };
    let mut wider = factors.clone();
    match wider.first_mut() {
        Some(f) => f.1 += 1,
        None => wider.push((lattice.basis_character(0), 1)),
    }
    let mut level = Level {
        module,
        den: Denominator::new(module, &factors)?,
        cache: PowerCache::new(),
        computed: BTreeMap::new(),
    };
    let mut check = Level {
        module,
        den: Denominator::new(module, &wider)?,
        cache: PowerCache::new(),
        computed: BTreeMap::new(),
    };
    let field = module.field();
    let n = module.rank();
    let mut ranks = BTreeMap::new();
    let mut generators: Vec<((i64, i64), LocalizedClass)> = Vec::new();
    let mut gen_numerators: Vec<Class> = Vec::new();
    // per bidegree: generator indices and a spanning set for the decomposables
    let mut layout: BTreeMap<(i64, i64), (Vec<usize>, Vec<Class>)> = BTreeMap::new();
    for deg in window.bidegrees() {
        let u = level.numerators(deg)?;
        let u_check = check.numerators(deg)?;
        if u.len() != u_check.len() {
            return Err(Error::invariant(format!(
                "unstable part in bidegree ({}, {}) is not captured by the denominator bound",
                deg.0, deg.1
            )));
        }
        if u.is_empty() {
            continue;
        }
        let basis: Vec<GMonomial> = basis_monomials(module, level.shifted(deg));
        let index: BTreeMap<GMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut decomposables: Vec<Class> = Vec::new();
        for j in 0..n {
            for x in level.numerators((deg.0 - 2, deg.1 - 1))? {
                decomposables.push(Class::v(module.ring(), j).mul(&x));
            }
            for x in level.numerators((deg.0 - 1, deg.1 - 1))? {
                decomposables.push(Class::u(module.ring(), j).mul(&x));
            }
        }
        let mut span = Matrix::zeros(field, 0, index.len());
        for d in &decomposables {
            span.push_row(coordinates(d, &index)?);
        }
        let mut rank = span.rank();
        let mut gens_here = Vec::new();
        for x in u {
            span.push_row(coordinates(&x, &index)?);
            let r = span.rank();
            if r > rank {
                rank = r;
                gens_here.push(generators.len());
                generators.push((deg, LocalizedClass::new(x.clone(), level.den.as_map(), &whole)?));
                gen_numerators.push(x);
            }
        }
        ranks.insert(deg, gens_here.len());
        layout.insert(deg, (gens_here, decomposables));
    }
    ranks.retain(|_, r| *r > 0);

    let d_class = {
        let mut acc = Class::one(module.ring());
        for (chi, k) in &level.den.factors {
            acc = acc.mul(&euler_in(module.ring(), chi)?.pow(*k));
        }
        acc
    };
    let mut products = Vec::new();
    for i in 0..generators.len() {
        for j in i..generators.len() {
            let (da, db) = (generators[i].0, generators[j].0);
            let deg = (da.0 + db.0, da.1 + db.1);
            let Some((gens_here, decomposables)) = layout.get(&deg) else {
                if window.contains(deg) {
                    products.push(ProductEntry {
                        left: i,
                        right: j,
                        result: Vec::new(),
                    });
                }
                continue;
            };
            let z = gen_numerators[i]
                .mul(&gen_numerators[j])
                .divide_exact(&d_class)
                .ok_or_else(|| Error::invariant("product of unstable elements left the bound"))?;
            let basis = basis_monomials(module, level.shifted(deg));
            let index: BTreeMap<GMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let columns: Vec<Vec<Scalar>> = gens_here
                .iter()
                .map(|&g| coordinates(&gen_numerators[g], &index))
                .chain(decomposables.iter().map(|d| coordinates(d, &index)))
                .collect::<Result<_>>()?;
            let mut rows = vec![vec![field.zero(); columns.len()]; index.len()];
            for (c, col) in columns.iter().enumerate() {
                for (r, s) in col.iter().enumerate() {
                    rows[r][c] = s.clone();
                }
            }
            let sol = Matrix::from_rows(field, columns.len(), rows)
                .solve(&coordinates(&z, &index)?)
                .ok_or_else(|| Error::invariant("product is not in the unstable part"))?;
            let result = gens_here
                .iter()
                .zip(&sol)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&g, c)| (g, c.clone()))
                .collect();
            products.push(ProductEntry { left: i, right: j, result });
        }
    }
    Ok(FixedCohomology {
        prime: module.prime(),
        window: *window,
        denominator: level.den.factors.clone(),
        ranks,
        generators,
        products,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqcoh::{PointRing, PointRingOptions, ProjectiveModelRing};
    use crate::lattice::CharacterLattice;

    fn mu(p: i64, n: usize) -> PointRing {
        PointRing::new(&CharacterLattice::new(0, vec![p; n]).unwrap(), PointRingOptions::default()).unwrap()
    }

    fn model(p: i64, n: usize, weights: &[&[i64]]) -> SteenrodModule {
        let r = mu(p, n);
        let l = r.lattice().clone();
        let ws = weights.iter().map(|w| l.character(w).unwrap()).collect();
        SteenrodModule::model(&ProjectiveModelRing::new(&r, ws).unwrap()).unwrap()
    }

    #[test]
    fn window_parsing() {
        let w: Window = "0..4,0..2".parse().unwrap();
        assert_eq!(w, Window::new(0, 4, 0, 2).unwrap());
        assert_eq!(w.to_string(), "0..4,0..2");
        assert!("4..0,0..2".parse::<Window>().is_err());
        assert!("0..4".parse::<Window>().is_err());
        assert_eq!(w.bidegrees().count(), 15);
    }

    #[test]
    fn basis_counts() {
        let m = SteenrodModule::point(&mu(3, 1)).unwrap();
        assert_eq!(module_basis(&m, (0, 0)).len(), 1);
        assert_eq!(module_basis(&m, (4, 2)).len(), 1);
        assert_eq!(module_basis(&m, (3, 2)).len(), 1);
        assert_eq!(module_basis(&m, (3, 1)).len(), 0);
        let pm = model(3, 1, &[&[0], &[1]]);
        assert_eq!(module_basis(&pm, (2, 1)).len(), 2);
    }

    #[test]
    fn instability_examples() {
        let r = mu(3, 1);
        let m = SteenrodModule::point(&r).unwrap();
        let l = r.lattice().clone();
        let chi = l.basis_character(0);
        let v = Class::v(r.ring(), 0);
        let u = Class::u(r.ring(), 0);
        let frac = |x: Class, k: u32| LocalizedClass::unchecked(x, BTreeMap::from([(chi.clone(), k)]));
        assert!(is_unstable(&m, &LocalizedClass::from_class(v.clone())).unwrap());
        assert!(!is_unstable(&m, &frac(r.one(), 1)).unwrap());
        assert!(!is_unstable(&m, &frac(u.clone(), 1)).unwrap());
        assert!(is_unstable(&m, &frac(v.pow(3).mul(&u), 2)).unwrap());
        assert!(!is_unstable(&m, &frac(v.pow(3).add(&u.mul(&v)), 2)).unwrap());
    }

    #[test]
    fn strip_in_rotated_coordinates() {
        let pm = model(5, 2, &[&[0, 0], &[1, 2]]);
        let ring = pm.ring().clone();
        let l = pm.lattice().clone();
        let chi = l.character(&[2, 1]).unwrap();
        let e = euler_in(&ring, &chi).unwrap();
        let x = Class::zeta(&ring).mul(&Class::u(&ring, 0)).add(&Class::v(&ring, 1).pow(2));
        let y = x.mul(&e);
        assert_eq!(strip_factor(&pm, &y, &chi).unwrap().unwrap(), x);
        assert!(strip_factor(&pm, &x, &chi).unwrap().is_none());
    }

    #[test]
    fn point_is_its_own_unstable_part() {
        for p in [2, 3, 5] {
            let r = mu(p, 1);
            let m = SteenrodModule::point(&r).unwrap();
            let chi = r.lattice().basis_character(0);
            let w = Window::new(-4, 12, -2, 6).unwrap();
            let sub = SubgroupPresentation::whole(r.lattice());
            let un = unstable_part(&m, &[(chi, 2)], &sub, &w).unwrap();
            assert!(un.coincides_with_module(), "p = {p}");
        }
        let r = mu(3, 2);
        let m = SteenrodModule::point(&r).unwrap();
        let l = r.lattice().clone();
        let den = [(l.character(&[1, 0]).unwrap(), 1), (l.character(&[1, 1]).unwrap(), 1)];
        let un = unstable_part(&m, &den, &SubgroupPresentation::whole(&l), &Window::new(0, 6, 0, 4).unwrap()).unwrap();
        assert!(un.coincides_with_module());
    }

    #[test]
    fn fixed_cohomology_of_two_points() {
        let pm = model(3, 1, &[&[0], &[1]]);
        let fc = smith_fixed_cohomology(&pm, &Window::new(0, 4, 0, 2).unwrap()).unwrap();
        assert_eq!(fc.ranks, BTreeMap::from([((0, 0), 2)]));
        assert_eq!(fc.products.len(), 3);
    }

    #[test]
    fn fixed_cohomology_of_a_fixed_line() {
        let pm = model(5, 1, &[&[2], &[2]]);
        let fc = smith_fixed_cohomology(&pm, &Window::new(0, 6, 0, 3).unwrap()).unwrap();
        assert_eq!(fc.ranks, BTreeMap::from([((0, 0), 1), ((2, 1), 1)]));
    }

    #[test]
    fn fixed_cohomology_of_point() {
        let m = SteenrodModule::point(&mu(3, 2)).unwrap();
        let fc = smith_fixed_cohomology(&m, &Window::new(0, 6, 0, 4).unwrap()).unwrap();
        assert_eq!(fc.ranks, BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn fixed_cohomology_rank_two_group() {
        // three isolated fixed points, plus a line: weights 0, e1, e1 and e2
        let pm = model(3, 2, &[&[0, 0], &[1, 0], &[1, 0], &[0, 1]]);
        let fc = smith_fixed_cohomology(&pm, &Window::new(0, 4, 0, 2).unwrap()).unwrap();
        assert_eq!(fc.ranks, BTreeMap::from([((0, 0), 3), ((2, 1), 1)]));
    }
}
