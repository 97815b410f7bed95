//! Coefficient fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field with `p` elements; `p` must be prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::invalid(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational into this field; fails when a denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den.inverse().ok_or_else(|| {
                    Error::FieldMismatch(format!("denominator of {q} vanishes in {self}"))
                })?;
                Ok(&num * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a coefficient field. Prime-field elements carry their modulus
/// and are always reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// The value as an integer, if it is one (prime-field elements use their
    /// representative in `[0, p)`).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(BigInt::from(*value)),
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(-2);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inverse().unwrap(), f.from_i64(5));
        assert!(f.from_i64(14).is_zero());
    }

    #[test]
    fn rational_reduction_into_prime_field() {
        let f = Field::prime(5).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), f.from_i64(3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert!(f.from_rational(&fifth).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }
}
