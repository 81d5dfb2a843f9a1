//! The extension field F_{p^m} in a polynomial basis.
//!
//! Elements are coefficient vectors of length `m` (ascending degree) reduced
//! modulo a monic irreducible polynomial. Polynomials over F_p outside the
//! field (moduli, gcd operands) are plain ascending `Vec<u64>` slices.

use std::fmt;

use crate::error::{Error, Result};
use crate::prime_field::{ensure_prime, inv_mod, prime_factors, PElem};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    inv_mod(PElem::new_unchecked(a, p)).expect("nonzero").value()
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv(*b.last().unwrap(), p);
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * lead_inv % p;
        quot[shift] = c;
        for (k, &bk) in b.iter().enumerate() {
            rem[shift + k] = (rem[shift + k] + p - c * bk % p) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divmod(a, b, p).1
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    while !r1.is_empty() {
        let r = poly_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), f, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = poly_rem(&[1], f, p);
    let mut b = poly_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

/// Rabin's test: `f` of degree m is irreducible iff x^{p^m} = x (mod f) and
/// gcd(x^{p^{m/l}} - x, f) = 1 for every prime l dividing m.
pub fn is_irreducible(f: &[u64], p: u64) -> Result<bool> {
    ensure_prime(p)?;
    let f = trim(f.iter().map(|c| c % p).collect());
    if f.len() < 2 {
        return Err(Error::BadDegree);
    }
    if *f.last().unwrap() != 1 {
        return Err(Error::NonMonic);
    }
    let m = f.len() - 1;
    let x = poly_rem(&[0, 1], &f, p);

    // frob[k] = x^{p^k} mod f
    let mut frob = vec![x.clone()];
    for k in 0..m {
        let next = poly_powmod(&frob[k], p, &f, p);
        frob.push(next);
    }
    if frob[m] != x {
        return Ok(false);
    }
    for l in prime_factors(m as u64) {
        let k = m / l as usize;
        let g = poly_gcd(&poly_sub(&frob[k], &x, p), &f, p);
        if g.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest monic irreducible polynomial of degree `m` over F_p, where the
/// low coefficients are read as base-p digits with the constant term least
/// significant.
pub fn find_irreducible(p: u64, m: usize) -> Result<Vec<u64>> {
    ensure_prime(p)?;
    if m == 0 {
        return Err(Error::BadDegree);
    }
    let mut digits = vec![0u64; m];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p)? {
            return Ok(f);
        }
        if !increment(&mut digits, p) {
            unreachable!("an irreducible polynomial of every degree exists");
        }
    }
}

/// Base-p increment of a little-endian digit vector; false on wraparound.
fn increment(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Parses comma-separated ascending coefficients, e.g. `"1,1,1"` for x^2+x+1.
pub fn parse_poly(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::PolyParse(s.to_string()))
        })
        .collect()
}

pub fn format_poly(f: &[u64]) -> String {
    f.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `p^m` if it fits in 128 bits.
pub fn field_order(p: u64, m: u32) -> Result<u128> {
    (p as u128).checked_pow(m).ok_or(Error::Overflow { p, m })
}

/// An immutable description of F_{p^m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    m: usize,
    q: u128,
    modulus: Vec<u64>,
    basis_traces: Vec<u64>,
}

impl FieldCtx {
    /// Field built on the smallest irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let modulus = find_irreducible(p, m)?;
        Self::with_modulus(p, modulus)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        ensure_prime(p)?;
        let modulus = trim(modulus.iter().map(|c| c % p).collect());
        if !is_irreducible(&modulus, p)? {
            return Err(Error::Reducible(p));
        }
        let m = modulus.len() - 1;
        let q = field_order(p, m as u32)?;
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            basis_traces: Vec::new(),
        };
        ctx.basis_traces = (0..m)
            .map(|k| {
                let mut basis = vec![0u64; m];
                basis[k] = 1;
                ctx.trace_by_frobenius(&basis)
            })
            .collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// tr(x^k) for k = 0..m.
    pub fn basis_traces(&self) -> &[u64] {
        &self.basis_traces
    }

    fn pad(&self, mut a: Vec<u64>) -> Vec<u64> {
        a.resize(self.m, 0);
        a
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.pad(poly_mulmod(a, b, &self.modulus, self.p))
    }

    pub(crate) fn pow_raw(&self, a: &[u64], exp: u64) -> Vec<u64> {
        self.pad(poly_powmod(a, exp, &self.modulus, self.p))
    }

    /// Extended Euclid against the modulus.
    pub(crate) fn inverse_raw(&self, a: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(a.to_vec());
        if r1.is_empty() {
            return None;
        }
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            r0 = std::mem::replace(&mut r1, rem);
            let next = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            s0 = std::mem::replace(&mut s1, next);
        }
        // r0 is a nonzero constant because the modulus is irreducible
        let c = inv(r0[0], p);
        let out: Vec<u64> = s0.iter().map(|&s| s * c % p).collect();
        Some(self.pad(poly_rem(&out, &self.modulus, p)))
    }

    /// Trace from the precomputed basis traces (linear in the coefficients).
    pub(crate) fn trace_raw(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.basis_traces)
            .fold(0, |acc, (&c, &t)| (acc + c * t) % self.p)
    }

    /// Trace as the literal sum of the m Frobenius images.
    pub(crate) fn trace_by_frobenius(&self, a: &[u64]) -> u64 {
        let mut sum = vec![0u64; self.m];
        let mut y = self.pad(a.to_vec());
        for _ in 0..self.m {
            for (s, c) in sum.iter_mut().zip(&y) {
                *s = (*s + c) % self.p;
            }
            y = self.pow_raw(&y, self.p);
        }
        debug_assert!(sum[1..].iter().all(|&c| c == 0), "trace lies in F_p");
        sum[0]
    }

    /// Base-p digits of `index`, constant coefficient first.
    pub(crate) fn digits_of(&self, mut index: u128) -> Vec<u64> {
        let mut out = vec![0u64; self.m];
        for d in out.iter_mut() {
            *d = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        out
    }

    pub fn element(&self, coeffs: &[u64]) -> ExtFieldElem<'_> {
        let reduced = poly_rem(&trim(coeffs.iter().map(|c| c % self.p).collect()), &self.modulus, self.p);
        ExtFieldElem {
            coeffs: self.pad(reduced),
            ctx: self,
        }
    }

    /// The constant element `c` of F_p embedded in F_q.
    pub fn constant(&self, c: u64) -> ExtFieldElem<'_> {
        self.element(&[c % self.p])
    }

    pub fn zero(&self) -> ExtFieldElem<'_> {
        self.constant(0)
    }

    pub fn one(&self) -> ExtFieldElem<'_> {
        self.constant(1)
    }

    /// The class of x.
    pub fn generator(&self) -> ExtFieldElem<'_> {
        self.element(&[0, 1])
    }

    /// All q elements in base-p counting order of their coefficient vectors.
    pub fn enumerate(&self) -> Elements<'_> {
        self.range(0, self.q)
    }

    /// Elements with counting-order index in `[start, end)`.
    pub fn range(&self, start: u128, end: u128) -> Elements<'_> {
        let end = end.min(self.q);
        Elements {
            ctx: self,
            digits: self.digits_of(start.min(self.q)),
            next: start,
            end,
        }
    }
}

/// Iterator over a contiguous index interval of the field.
#[derive(Debug, Clone)]
pub struct Elements<'a> {
    ctx: &'a FieldCtx,
    digits: Vec<u64>,
    next: u128,
    end: u128,
}

impl<'a> Iterator for Elements<'a> {
    type Item = ExtFieldElem<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let item = ExtFieldElem {
            coeffs: self.digits.clone(),
            ctx: self.ctx,
        };
        self.next += 1;
        increment(&mut self.digits, self.ctx.p);
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end.saturating_sub(self.next)).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// An element of F_{p^m}.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtFieldElem<'a> {
    coeffs: Vec<u64>,
    ctx: &'a FieldCtx,
}

impl<'a> ExtFieldElem<'a> {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn trace(&self) -> PElem {
        PElem::new_unchecked(self.ctx.trace_raw(&self.coeffs), self.ctx.p)
    }

    pub fn invert(&self) -> Result<Self> {
        let coeffs = self.ctx.inverse_raw(&self.coeffs).ok_or(Error::ZeroInverse)?;
        Ok(Self {
            coeffs,
            ctx: self.ctx,
        })
    }

    /// tr(x^{-1}); undefined at zero.
    pub fn cotrace(&self) -> Result<PElem> {
        Ok(self.invert()?.trace())
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self {
            coeffs: self.ctx.pow_raw(&self.coeffs, exp),
            ctx: self.ctx,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            coeffs: self.ctx.mul_raw(&self.coeffs, &rhs.coeffs),
            ctx: self.ctx,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.ctx.p;
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
            ctx: self.ctx,
        }
    }

    pub fn scale(&self, c: PElem) -> Self {
        let p = self.ctx.p;
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c.value() % p).collect(),
            ctx: self.ctx,
        }
    }
}

impl fmt::Debug for ExtFieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtFieldElem({:?} mod {:?})", self.coeffs, self.ctx.modulus)
    }
}
