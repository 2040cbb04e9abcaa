//! Finite fields `F_q`, `q = p^k`, with table arithmetic.
//!
//! Elements are encoded as integers in `0..q`: the base-`p` digits of an
//! element are the coefficients of its polynomial representative modulo the
//! field's modulus, lowest degree first. For prime fields this is the usual
//! residue.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order for which addition and multiplication tables are built.
pub const MAX_FIELD_ORDER: u64 = 1024;

/// A finite field with precomputed operation tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Field {
    /// Builds `F_{p^k}`.
    ///
    /// `modulus` is a monic irreducible polynomial of degree `k` over `F_p`,
    /// given lowest coefficient first (`k + 1` entries). It may be omitted for
    /// prime fields and for `F_4`, `F_8` and `F_9`.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::BadModulus { expected: 0, got: 0 });
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let q = q as u32;

        let modulus = if k == 1 {
            None
        } else {
            let m = match modulus {
                Some(m) => m.to_vec(),
                None => default_modulus(p, k)
                    .ok_or(Error::MissingModulus { q: q as u64 })?,
            };
            if m.len() != k as usize + 1 || m[k as usize] != 1 {
                return Err(Error::BadModulus {
                    expected: k as usize,
                    got: m.len(),
                });
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus {
                    expected: k as usize,
                    got: m.len(),
                });
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus { p });
            }
            Some(m)
        };

        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let digits: Vec<Vec<u32>> = (0..q).map(|a| to_digits(a, p, k)).collect();
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = from_digits(&sum, p);
                mul[a * qs + b] = match &modulus {
                    None => ((a as u64 * b as u64) % p as u64) as u32,
                    Some(m) => from_digits(&poly_mul_mod(&digits[a], &digits[b], m, p), p),
                };
            }
        }
        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for a in 0..qs {
            neg[a] = (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap_or(0);
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * qs + b as usize] == 1)
                    .ok_or(Error::ReducibleModulus { p })?;
            }
        }

        Ok(Self {
            inner: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_q` for a prime power `q`, using the built-in modulus when `q` is not
    /// prime.
    pub fn of_order(q: u64) -> Result<Self> {
        Self::of_order_with(q, None)
    }

    /// `F_q` for a prime power `q` with an optional modulus, as in [`Field::new`].
    pub fn of_order_with(q: u64, modulus: Option<&[u32]>) -> Result<Self> {
        let p = crate::algebra::smallest_prime_divisor(q).map_err(|_| Error::NonPrimeCharacteristic(q))?;
        let mut k = 0u32;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::NonPrimeCharacteristic(q));
        }
        Self::new(p, k, modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.inner.add[(a * self.inner.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.inner.mul[(a * self.inner.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inner.inv[a as usize])
    }

    /// Checks that `value` encodes an element of this field.
    pub fn element(&self, value: u64) -> Result<u32> {
        if value < self.inner.q as u64 {
            Ok(value as u32)
        } else {
            Err(Error::ElementOutOfRange {
                value,
                q: self.inner.q,
            })
        }
    }

    /// Encodes a coefficient vector (lowest degree first) as an element.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() > self.inner.k as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::ElementOutOfRange {
                value: coeffs.iter().map(|&c| c as u64).max().unwrap_or(0),
                q: self.inner.q,
            });
        }
        Ok(from_digits(coeffs, self.inner.p))
    }

    /// Coefficient vector of an element, lowest degree first, length `k`.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        to_digits(a, self.inner.p, self.inner.k)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("k", &self.inner.k)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        // x^2 + x + 1
        (2, 2) => Some(vec![1, 1, 1]),
        // x^3 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),
        // x^2 + 1
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
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

fn to_digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(a % p);
        a /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).unwrap_or(0)
}

/// Remainder of `a` divided by `b` over `F_p`; `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod_p(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = to_digits(low as u32, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}
