//! Fractions `x / ∏ e(χ)^k` with every `χ` in `E_C`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Character, SubgroupPresentation};

use super::{character_in_ec, euler_in, Class};

/// A class of `H_G(X)[E_C^{-1}]`, kept as numerator and a multiset of
/// denominator characters.
#[derive(Debug, Clone)]
pub struct LocalizedClass {
    num: Class,
    den: BTreeMap<Character, u32>,
}

impl LocalizedClass {
    /// Checks that every denominator character restricts nontrivially to `C`
    /// and has a nonzero Euler class.
    pub fn new(num: Class, den: BTreeMap<Character, u32>, sub: &SubgroupPresentation) -> Result<Self> {
        for chi in den.keys() {
            if !character_in_ec(num.ring(), chi, sub)? {
                return Err(Error::DenominatorNotInEc(format!("e{chi} is not invertible for this subgroup")));
            }
        }
        Ok(Self::unchecked(num, den))
    }

    pub(crate) fn unchecked(num: Class, mut den: BTreeMap<Character, u32>) -> Self {
        den.retain(|_, k| *k > 0);
        LocalizedClass { num, den }
    }

    pub fn from_class(num: Class) -> Self {
        LocalizedClass {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &Class {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<Character, u32> {
        &self.den
    }

    /// The product of the denominator Euler classes.
    pub fn denominator_class(&self) -> Class {
        denominator_product(&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Bidegree of a homogeneous nonzero fraction; each denominator factor
    /// contributes `−(2, 1)`.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let (a, b) = self.num.bidegree()?;
        let k: i64 = self.den.values().map(|&k| k as i64).sum();
        Some((a - 2 * k, b - k))
    }

    fn over_common(&self, other: &LocalizedClass) -> (Class, Class, BTreeMap<Character, u32>) {
        let mut den = self.den.clone();
        for (c, &k) in &other.den {
            let e = den.entry(c.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |x: &LocalizedClass| {
            let extra: BTreeMap<Character, u32> = den
                .iter()
                .map(|(c, &k)| (c.clone(), k - x.den.get(c).copied().unwrap_or(0)))
                .collect();
            x.num.mul(&denominator_product(&x.num, &extra))
        };
        (lift(self), lift(other), den)
    }

    pub fn add(&self, other: &LocalizedClass) -> LocalizedClass {
        let (a, b, den) = self.over_common(other);
        LocalizedClass::unchecked(a.add(&b), den)
    }

    pub fn neg(&self) -> LocalizedClass {
        LocalizedClass::unchecked(self.num.neg(), self.den.clone())
    }

    pub fn sub(&self, other: &LocalizedClass) -> LocalizedClass {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LocalizedClass) -> LocalizedClass {
        let mut den = self.den.clone();
        for (c, &k) in &other.den {
            *den.entry(c.clone()).or_insert(0) += k;
        }
        LocalizedClass::unchecked(self.num.mul(&other.num), den)
    }

    pub fn mul_class(&self, x: &Class) -> LocalizedClass {
        LocalizedClass::unchecked(self.num.mul(x), self.den.clone())
    }

    /// The class itself when the denominator divides the numerator.
    pub fn to_class(&self) -> Option<Class> {
        let mut x = self.num.clone();
        for (c, &k) in &self.den {
            let e = euler_in(x.ring(), c).ok()?;
            for _ in 0..k {
                x = x.divide_exact(&e)?;
            }
        }
        Some(x)
    }
}

fn denominator_product(like: &Class, den: &BTreeMap<Character, u32>) -> Class {
    let ring = like.ring();
    let mut acc = Class::one(ring);
    for (c, &k) in den {
        acc = acc.mul(&euler_in(ring, c).expect("validated character").pow(k));
    }
    acc
}

/// Equality in the localization, by cross-multiplying. Euler classes of
/// nonzero characters are not zero divisors, so no extra factor is needed.
pub fn localize_eq(a: &LocalizedClass, b: &LocalizedClass) -> bool {
    let (x, y, _) = a.over_common(b);
    x == y
}

impl PartialEq for LocalizedClass {
    fn eq(&self, other: &Self) -> bool {
        localize_eq(self, other)
    }
}

impl fmt::Display for LocalizedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (c, k)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "e{c}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        write!(f, ")")
    }
}
