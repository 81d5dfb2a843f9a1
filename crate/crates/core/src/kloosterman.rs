//! Kloosterman sums K(u) over F_p, their lift K^{(m)}(u) to F_{p^m}, and the
//! classical identities they satisfy.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::ext_field::FieldCtx;
use crate::prime_field::{ensure_prime, inv_mod, PElem};

/// Exact K(u) = Σ_{x=1}^{p-1} ζ^{x + u/x}.
pub fn kloosterman_prime(u: u64, p: u64) -> Result<CycloNum> {
    ensure_prime(p)?;
    let u = u % p;
    if u == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut counts = vec![0i64; p as usize];
    for x in 1..p {
        let xinv = inv_mod(PElem::new_unchecked(x, p))?.value();
        counts[((x + u * xinv) % p) as usize] += 1;
    }
    Ok(CycloNum::from_exponent_counts(&counts, p))
}

/// Binomial row C(m, 0..=m) by Pascal's rule.
pub fn binomial_row(m: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// The lift of a prime-field sum `k = K(u)` to degree m:
/// (-1)^{m-1} 2^{1-m} Σ_{2r ≤ m} C(m, 2r) k^{m-2r} (k² - 4p)^r.
pub fn lift_from_prime_sum(k: &CycloNum, m: u32) -> Result<CycloNum> {
    if m == 0 {
        return Err(Error::BadDegree);
    }
    let p = k.p();
    let binom = binomial_row(m);
    let disc = k * k - CycloNum::from_int(4 * p, p);

    // powers of k descending from m, powers of disc ascending from 0
    let kpow: Vec<CycloNum> = std::iter::successors(Some(CycloNum::one(p)), |acc| Some(acc * k))
        .take(m as usize + 1)
        .collect();
    let mut sum = CycloNum::zero(p);
    let mut dpow = CycloNum::one(p);
    for r in 0..=(m / 2) {
        let term = (&kpow[(m - 2 * r) as usize] * &dpow).scale(&BigRational::from_integer(
            binom[(2 * r) as usize].clone(),
        ));
        sum = sum + term;
        dpow = &dpow * &disc;
    }
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let factor = BigRational::new(BigInt::from(sign), BigInt::one() << (m - 1));
    Ok(sum.scale(&factor))
}

/// Exact K^{(m)}(u) via the Carlitz lift of K(u).
pub fn carlitz_lift(u: u64, m: u32, p: u64) -> Result<CycloNum> {
    lift_from_prime_sum(&kloosterman_prime(u, p)?, m)
}

/// Default guard on brute-force field enumeration.
pub const DEFAULT_GUARD: u128 = 100_000_000;

/// Enumeration guard, overridable through `TRACE_COTRACE_GUARD`.
pub fn enumeration_guard() -> u128 {
    std::env::var("TRACE_COTRACE_GUARD")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

/// Floating-point K^{(m)}(u) by summing over every nonzero element of the
/// field, with u embedded as a constant.
pub fn kloosterman_direct(u: u64, ctx: &FieldCtx) -> Result<Complex64> {
    kloosterman_direct_guarded(u, ctx, enumeration_guard())
}

pub fn kloosterman_direct_guarded(u: u64, ctx: &FieldCtx, guard: u128) -> Result<Complex64> {
    let p = ctx.p();
    if u % p == 0 {
        return Err(Error::ZeroArgument);
    }
    if ctx.q() > guard {
        return Err(Error::TooLarge { q: ctx.q(), guard });
    }
    let unit = ctx.constant(u);
    let roots: Vec<Complex64> = (0..p)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / p as f64))
        .collect();
    let chunks = crate::oracle::split_range(1, ctx.q(), rayon::current_num_threads() * 4);
    let total = chunks
        .into_par_iter()
        .map(|(start, end)| {
            let mut counts = vec![0u64; p as usize];
            for x in ctx.range(start, end) {
                let y = unit.mul(&x.invert().expect("nonzero"));
                let t = (x.trace().value() + y.trace().value()) % p;
                counts[t as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; p as usize],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    Ok(total
        .iter()
        .zip(&roots)
        .map(|(&c, w)| w * c as f64)
        .sum())
}

/// K(u) and K^{(m)}(u) for u = 1..p-1.
#[derive(Debug, Clone, PartialEq)]
pub struct KloostermanProfile {
    pub p: u64,
    pub m: u32,
    pub prime_sums: Vec<CycloNum>,
    pub lifted_sums: Vec<CycloNum>,
}

impl KloostermanProfile {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        ensure_prime(p)?;
        let prime_sums = (1..p)
            .map(|u| kloosterman_prime(u, p))
            .collect::<Result<Vec<_>>>()?;
        let lifted_sums = prime_sums
            .iter()
            .map(|k| lift_from_prime_sum(k, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p,
            m,
            prime_sums,
            lifted_sums,
        })
    }

    /// K(u), u in 1..p.
    pub fn prime(&self, u: u64) -> &CycloNum {
        &self.prime_sums[(u % self.p - 1) as usize]
    }

    /// K^{(m)}(u), u in 1..p.
    pub fn lifted(&self, u: u64) -> &CycloNum {
        &self.lifted_sums[(u % self.p - 1) as usize]
    }

    /// The vector (K^{(m)}(1), K^{(m)}(g), …, K^{(m)}(g^{p-2})).
    pub fn lifted_by_powers(&self, g: u64) -> Vec<CycloNum> {
        let g = PElem::new_unchecked(g, self.p);
        (0..self.p - 1)
            .map(|l| self.lifted(g.pow(l).value()).clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LehmerReport {
    pub p: u64,
    pub checks: Vec<IdentityCheck>,
}

impl LehmerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exact check of Σ K(u) = 1, Σ K(u)² = p² - p - 1 and, for odd p,
/// Σ K(u)K(cu) = -p - 1 for every c ≠ 1.
pub fn check_lehmer(p: u64) -> Result<LehmerReport> {
    let ks = (1..p)
        .map(|u| kloosterman_prime(u, p))
        .collect::<Result<Vec<_>>>()?;
    let pi = p as i64;
    let mut checks = Vec::new();

    let sum = ks.iter().fold(CycloNum::zero(p), |acc, k| acc + k);
    checks.push(IdentityCheck {
        name: "sum K(u) = 1",
        passed: sum.is_one(),
        detail: format!("got {sum}"),
    });

    let sq = ks.iter().fold(CycloNum::zero(p), |acc, k| acc + k * k);
    let want = CycloNum::from_int(pi * pi - pi - 1, p);
    checks.push(IdentityCheck {
        name: "sum K(u)^2 = p^2 - p - 1",
        passed: sq == want,
        detail: format!("got {sq}, want {want}"),
    });

    if p > 2 {
        let want = CycloNum::from_int(-pi - 1, p);
        let mut bad = Vec::new();
        for c in 2..p {
            let s = (1..p).fold(CycloNum::zero(p), |acc, u| {
                acc + &ks[(u - 1) as usize] * &ks[(c * u % p - 1) as usize]
            });
            if s != want {
                bad.push(format!("c={c}: {s}"));
            }
        }
        checks.push(IdentityCheck {
            name: "sum K(u)K(cu) = -p - 1 (c != 1)",
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("all {} values of c", p - 2)
            } else {
                bad.join("; ")
            },
        });
    }
    Ok(LehmerReport { p, checks })
}

/// Weil bound |v| ≤ 2√q, with absolute slack 1e-9. `v` must be real.
pub fn check_weil(v: &CycloNum, q: u128) -> Result<bool> {
    if !v.is_real() {
        return Err(Error::NotReal);
    }
    Ok(v.embed_complex().norm() <= weil_bound(q) + 1e-9)
}

pub fn weil_bound(q: u128) -> f64 {
    2.0 * (q as f64).sqrt()
}
