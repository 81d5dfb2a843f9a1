//! Exact arithmetic in the cyclotomic field Q(ζ_p), p prime.
//!
//! Elements are stored over the power basis {1, ζ, …, ζ^{p-2}} as an integer
//! numerator vector with one shared positive denominator, kept in lowest
//! terms. Powers ζ^{p-1} are rewritten with Φ_p(ζ) = 0, i.e.
//! ζ^{p-1} = -(1 + ζ + … + ζ^{p-2}). For p = 2 the field is Q and ζ = -1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::prime_field::ensure_prime;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    p: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn raw(p: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len() as u64, p - 1);
        let mut out = CycloNum { p, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |g, c| if c.is_zero() { g } else { g.gcd(c) });
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    /// Reduces a coefficient vector over {1, ζ, …, ζ^{p-1}} (length p).
    fn from_full(p: u64, mut full: Vec<BigInt>, den: BigInt) -> Self {
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in &mut full {
                *c -= &top;
            }
        }
        Self::raw(p, full, den)
    }

    pub fn zero(p: u64) -> Self {
        CycloNum {
            p,
            num: vec![BigInt::zero(); (p - 1) as usize],
            den: BigInt::one(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(1, p)
    }

    pub fn from_int(v: impl Into<BigInt>, p: u64) -> Self {
        let mut out = Self::zero(p);
        out.num[0] = v.into();
        out
    }

    pub fn from_rational(r: &BigRational, p: u64) -> Self {
        let mut num = vec![BigInt::zero(); (p - 1) as usize];
        num[0] = r.numer().clone();
        Self::raw(p, num, r.denom().clone())
    }

    /// Builds an element from rational coefficients over the power basis.
    pub fn from_coeffs(coeffs: &[BigRational], p: u64) -> Result<Self> {
        ensure_prime(p)?;
        assert_eq!(coeffs.len() as u64, p - 1, "need p-1 coefficients");
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::raw(p, num, den))
    }

    /// Σ_k counts[k]·ζ^k for exponents k in `[0, p)`.
    pub fn from_exponent_counts(counts: &[i64], p: u64) -> Self {
        assert_eq!(counts.len() as u64, p);
        let full = counts.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_full(p, full, BigInt::one())
    }

    /// The conductor p.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficient of ζ^k in lowest terms, k < p-1.
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeff(0))
        } else {
            Err(Error::NotRational)
        }
    }

    /// The value as an integer, if it is a rational with denominator 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Total bit length of numerators and denominator; a rough size measure.
    pub fn height(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).sum::<u64>() + self.den.bits()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(rhs, false))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(rhs, true))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn add_unchecked(&self, rhs: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == rhs.den {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &rhs.den, b * &self.den);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &rhs.den)
        };
        Self::raw(self.p, num, den)
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let p = self.p as usize;
        // product in Q[x]/(x^p - 1), then project with Φ_p
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Self::from_full(self.p, full, &self.den * &rhs.den)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::raw(self.p, num, &self.den * r.denom())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse as a⁻¹ = Π_{k=2}^{p-1} σ_k(a) / N(a), where
    /// N(a) = Π_k σ_k(a) is rational.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.p;
        let mut cofactor = Self::one(p);
        for k in 2..p as i64 {
            cofactor = cofactor.mul_unchecked(&self.galois(k)?);
        }
        let norm = self.mul_unchecked(&cofactor).as_rational()?;
        Ok(cofactor.scale(&norm.recip()))
    }

    /// Multiplicative inverse by extended Euclid against Φ_p over Q. Slower
    /// than [`CycloNum::invert`]; kept as an independent route.
    pub fn invert_euclid(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.p as usize;
        let a: QPoly = QPoly::trim(self.coeffs());
        let phi = QPoly(vec![BigRational::one(); p]);
        // s·a + t·Φ = r, tracked for s only
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (quot, rem) = r0.divmod(&r1);
            r0 = std::mem::replace(&mut r1, rem);
            let next = s0.sub(&quot.mul(&s1));
            s0 = std::mem::replace(&mut s1, next);
        }
        // Φ_p is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(r0.0.len(), 1);
        let c = r0.0[0].recip();
        let mut full: Vec<BigRational> = vec![BigRational::zero(); p];
        for (k, s) in s0.0.iter().enumerate() {
            full[k % p] += s * &c;
        }
        let top = full.pop().unwrap();
        let coeffs: Vec<BigRational> = full.into_iter().map(|x| x - &top).collect();
        Self::from_coeffs(&coeffs, self.p)
    }

    /// Image under the automorphism ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let p = self.p as i64;
        if k.rem_euclid(p) == 0 {
            return Err(Error::BadAutomorphism { k, p: self.p });
        }
        let k = k.rem_euclid(p) as usize;
        let mut full = vec![BigInt::zero(); p as usize];
        for (j, c) in self.num.iter().enumerate() {
            full[(j * k) % p as usize] += c;
        }
        Ok(Self::from_full(self.p, full, self.den.clone()))
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("p-1 is a unit")
    }

    /// Fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Evaluation at ζ = e^{2πi/p}.
    pub fn embed_complex(&self) -> Complex64 {
        let p = self.p as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let coeff = if den.is_finite() && c.bits() < 1000 {
                    c.to_f64().unwrap() / den
                } else {
                    BigRational::new(c.clone(), self.den.clone())
                        .to_f64()
                        .unwrap_or(f64::NAN)
                };
                Complex64::from_polar(coeff, 2.0 * std::f64::consts::PI * k as f64 / p)
            })
            .sum()
    }

    /// Real part of the embedding; meaningful for real elements.
    pub fn to_f64(&self) -> f64 {
        self.embed_complex().re
    }

    /// `|self|` for a real element, with the sign read from the embedding.
    pub fn abs_real(&self) -> Self {
        if self.to_f64() < 0.0 {
            -self
        } else {
            self.clone()
        }
    }
}

/// ζ^k in Q(ζ_p).
pub fn zeta_pow(k: i64, p: u64) -> Result<CycloNum> {
    ensure_prime(p)?;
    let mut counts = vec![0i64; p as usize];
    counts[k.rem_euclid(p as i64) as usize] = 1;
    Ok(CycloNum::from_exponent_counts(&counts, p))
}

/// Dense polynomial over Q, ascending, no trailing zeros.
#[derive(Debug, Clone)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn trim(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        QPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let zero = BigRational::zero();
        Self::trim(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::trim(out)
    }

    fn divmod(&self, rhs: &Self) -> (Self, Self) {
        let lead = rhs.0.last().expect("nonzero divisor").recip();
        let mut rem = self.0.clone();
        if rem.len() < rhs.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - rhs.0.len() + 1];
        while rem.len() >= rhs.0.len() && !rem.is_empty() {
            let shift = rem.len() - rhs.0.len();
            let c = rem.last().unwrap() * &lead;
            for (k, b) in rhs.0.iter().enumerate() {
                rem[shift + k] -= &c * b;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::trim(quot), QPoly(rem))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            /// Panics on conductor mismatch; use the `checked_*` methods to
            /// get an error instead.
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                assert_eq!(self.p, rhs.p, "conductor mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycloNum, b| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycloNum, b| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycloNum, b| a.mul_unchecked(b));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            p: self.p,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[p={}]({})", self.p, self)
    }
}
