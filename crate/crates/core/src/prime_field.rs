//! Arithmetic in the prime field F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Trial-division primality test. Intended for small moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    // Keeps every product of two residues inside u64.
    if is_prime(p) && p < (1 << 32) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A residue modulo a prime `p`, always stored reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PElem {
    value: u64,
    modulus: u64,
}

impl PElem {
    pub fn new(value: u64, p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Self::new_unchecked(value, p))
    }

    /// Builds a residue from a signed integer, reducing into `[0, p)`.
    pub fn from_i64(value: i64, p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Self::new_unchecked(value.rem_euclid(p as i64) as u64, p))
    }

    pub(crate) fn new_unchecked(value: u64, p: u64) -> Self {
        Self {
            value: value % p,
            modulus: p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Self::new_unchecked(acc, p)
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self;
        let mut k = 1;
        while acc.value != 1 {
            acc = acc * self;
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PElem {
    type Output = PElem;
    fn add(self, rhs: PElem) -> PElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PElem::new_unchecked(self.value + rhs.value, self.modulus)
    }
}

impl Sub for PElem {
    type Output = PElem;
    fn sub(self, rhs: PElem) -> PElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PElem::new_unchecked(self.value + self.modulus - rhs.value, self.modulus)
    }
}

impl Mul for PElem {
    type Output = PElem;
    fn mul(self, rhs: PElem) -> PElem {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PElem::new_unchecked(self.value * rhs.value, self.modulus)
    }
}

impl Neg for PElem {
    type Output = PElem;
    fn neg(self) -> PElem {
        PElem::new_unchecked(self.modulus - self.value, self.modulus)
    }
}

/// Inverse of `a` modulo its prime, by the extended Euclidean algorithm.
pub fn inv_mod(a: PElem) -> Result<PElem> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let p = a.modulus as i64;
    let (mut r0, mut r1) = (p, a.value as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(PElem::new_unchecked(s0.rem_euclid(p) as u64, a.modulus))
}

/// Smallest generator of the multiplicative group F_p^*.
pub fn primitive_root(p: u64) -> Result<PElem> {
    ensure_prime(p)?;
    if p == 2 {
        return Ok(PElem::new_unchecked(1, 2));
    }
    let factors = prime_factors(p - 1);
    let g = (2..p)
        .find(|&g| {
            let g = PElem::new_unchecked(g, p);
            factors.iter().all(|&l| g.pow((p - 1) / l).value != 1)
        })
        .expect("F_p^* is cyclic");
    Ok(PElem::new_unchecked(g, p))
}

/// True iff `g` generates F_p^*.
pub fn is_primitive(g: PElem) -> bool {
    g.order() == Some(g.modulus - 1)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
