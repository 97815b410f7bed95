//! Arithmetic in `𝔽_q` for small prime powers, via log/antilog tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{is_prime, Scalar};

/// Largest field size the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// `𝔽_q` with elements encoded as integers in `[0, q)`: the base-`p` digits are
/// the coefficients of a polynomial in a primitive element.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Splits `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, k))
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InadmissibleFieldSize {
            q,
            reason: "not a prime power".into(),
        })?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::InadmissibleFieldSize {
                q,
                reason: format!("larger than {MAX_FIELD_SIZE}"),
            });
        }
        // search for a monic f of degree k such that x generates (𝔽_p[x]/f)^×
        for tail in 1..q {
            let f: Vec<u64> = digits(tail, p, k);
            if f[0] == 0 {
                continue;
            }
            if let Some(exp) = powers_of_x(&f, p, k, q) {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return Ok(FiniteField { p, k, q, exp, log });
            }
        }
        Err(Error::invariant(format!("no primitive polynomial found for q = {q}")))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        undigits(da.iter().zip(&db).map(|(x, y)| (x + y) % self.p), self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        undigits(digits(a, self.p, self.k).into_iter().map(|x| (self.p - x) % self.p), self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize] as u64
    }

    /// `a^e` for any integer `e`; `0^e` is 0 for `e > 0` and 1 for `e = 0`.
    pub fn pow(&self, a: u64, e: &BigInt) -> Option<u64> {
        if a == 0 {
            return match e.sign() {
                num_bigint::Sign::Plus => Some(0),
                num_bigint::Sign::NoSign => Some(1),
                num_bigint::Sign::Minus => None,
            };
        }
        let n = BigInt::from(self.q - 1);
        let l = (BigInt::from(self.log[a as usize]) * e).mod_floor(&n);
        Some(self.exp[l.to_usize().expect("reduced")] as u64)
    }

    pub fn pow_u32(&self, a: u64, e: u32) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        let n = self.q - 1;
        let l = (self.log[a as usize] as u64 * e as u64) % n;
        self.exp[l as usize] as u64
    }

    /// `g^i` for the primitive element `g`.
    pub fn primitive_power(&self, i: &BigInt) -> u64 {
        let l = i.mod_floor(&BigInt::from(self.q - 1));
        self.exp[l.to_usize().expect("reduced")] as u64
    }

    /// The image of an integer-valued or prime-field scalar.
    pub fn from_scalar(&self, c: &Scalar) -> Result<u64> {
        match c {
            Scalar::Rat(r) => {
                let p = BigInt::from(self.p);
                let num = r.numer().mod_floor(&p).to_u64().expect("residue");
                let den = r.denom().mod_floor(&p).to_u64().expect("residue");
                if den == 0 {
                    return Err(Error::InadmissibleFieldSize {
                        q: self.q,
                        reason: format!("coefficient {r} has a denominator divisible by {}", self.p),
                    });
                }
                let inv = self.pow(den, &BigInt::from(-1)).expect("nonzero");
                Ok(self.mul(num, inv))
            }
            Scalar::Mod { value, modulus } => {
                if *modulus != self.p {
                    return Err(Error::InadmissibleFieldSize {
                        q: self.q,
                        reason: format!("coefficients live in characteristic {modulus}"),
                    });
                }
                Ok(*value)
            }
        }
    }
}

fn digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(ds: impl DoubleEndedIterator<Item = u64>, p: u64) -> u64 {
    ds.rev().fold(0, |acc, d| acc * p + d)
}

/// Successive powers of `x` modulo `x^k + f_{k−1}x^{k−1} + … + f_0`, if `x`
/// has order exactly `q − 1`.
fn powers_of_x(f: &[u64], p: u64, k: u32, q: u64) -> Option<Vec<u32>> {
    let mut exp = Vec::with_capacity((q - 1) as usize);
    let mut cur = vec![0u64; k as usize];
    cur[0] = 1;
    for i in 0..q - 1 {
        let enc = undigits(cur.iter().copied(), p);
        if i > 0 && enc == 1 {
            return None;
        }
        exp.push(enc as u32);
        let top = cur[k as usize - 1];
        for j in (1..k as usize).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k as usize {
            cur[j] = (cur[j] + (p - top * f[j] % p)) % p;
        }
    }
    (undigits(cur.iter().copied(), p) == 1).then_some(exp)
}
