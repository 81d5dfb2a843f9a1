//! Counts T_ij of nonzero x in F_{p^m} with tr(x) = i and tr(1/x) = j,
//! computed without enumerating the field.
//!
//! The p - 1 unknowns t_s = T_{1s} satisfy, for every u in F_p^*,
//!
//! ```text
//! Σ_s (K(us) + p + 1) t_s = K^{(m)}(u) + q + 1
//! ```
//!
//! which is solved exactly over Q(ζ_p). The rest of the table follows from
//! T_ij = T_{1,ij} (i ≠ 0), T_ij = T_ji, T_{0i} = T_{10} and the row sums
//! q/p of the trace fibers.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::circulant::{check_primitive, LeftCirculant};
use crate::cyclotomic::{zeta_pow, CycloNum};
use crate::error::{Error, Result};
use crate::ext_field::{field_order, find_irreducible};
use crate::kloosterman::{check_weil, weil_bound, KloostermanProfile};
use crate::linalg::{self, Matrix};
use crate::prime_field::{ensure_prime, primitive_root, PElem};

/// The p×p table of counts, `counts[i][j] = T_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCotraceTable {
    pub p: u64,
    pub m: u32,
    pub q: u128,
    pub modulus: Vec<u64>,
    pub counts: Vec<Vec<u128>>,
}

impl TraceCotraceTable {
    pub fn get(&self, i: u64, j: u64) -> u128 {
        self.counts[i as usize][j as usize]
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().flatten().sum()
    }

    /// T_{1s} for s = 1..p-1.
    pub fn t1s(&self) -> Vec<u128> {
        self.counts[1][1..].to_vec()
    }

    /// Checks every structural identity of a trace/co-trace table.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::TableInvariant(msg));
        let p = self.p as usize;
        let fiber = self.q / self.p as u128;
        if self.counts.len() != p || self.counts.iter().any(|r| r.len() != p) {
            return bad(format!("table is not {p}x{p}"));
        }
        if self.total() != self.q - 1 {
            return bad(format!("total {} != q - 1 = {}", self.total(), self.q - 1));
        }
        for (i, row) in self.counts.iter().enumerate() {
            let want = if i == 0 { fiber - 1 } else { fiber };
            let got: u128 = row.iter().sum();
            if got != want {
                return bad(format!("row {i} sums to {got}, want {want}"));
            }
            for j in 0..p {
                if row[j] != self.counts[j][i] {
                    return bad(format!("T{i}{j} != T{j}{i}"));
                }
            }
        }
        if p > 1 {
            let t01 = self.counts[0][1];
            for i in 1..p {
                if self.counts[0][i] != t01 || self.counts[i][0] != t01 {
                    return bad(format!("T0{i} or T{i}0 differs from T01"));
                }
            }
            for i in 1..p {
                for j in 1..p {
                    if self.counts[i][j] != self.counts[1][i * j % p] {
                        return bad(format!("T{i}{j} != T1{}", i * j % p));
                    }
                }
            }
        }
        Ok(())
    }
}

/// t[s-1] = T_{1s}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionVector {
    pub p: u64,
    pub m: u32,
    pub t: Vec<u128>,
}

/// The natural-order system: row u, column s, both running over 1..p-1.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub p: u64,
    pub m: u32,
    pub matrix: Matrix,
    pub rhs: Vec<CycloNum>,
}

pub fn build_system(p: u64, m: u32) -> Result<LinearSystem> {
    ensure_prime(p)?;
    let profile = KloostermanProfile::new(p, m)?;
    build_system_from(&profile)
}

pub fn build_system_from(profile: &KloostermanProfile) -> Result<LinearSystem> {
    let (p, m) = (profile.p, profile.m);
    let q = field_order(p, m)?;
    let shift = CycloNum::from_int(p as i64 + 1, p);
    let matrix = (1..p)
        .map(|u| (1..p).map(|s| profile.prime(u * s % p) + &shift).collect())
        .collect();
    let q1 = CycloNum::from_int(BigInt::from(q) + 1, p);
    let rhs = (1..p).map(|u| profile.lifted(u) + &q1).collect();
    Ok(LinearSystem { p, m, matrix, rhs })
}

/// The system with unknowns x_l = t_{g^l} and equations ordered by powers
/// of g, whose coefficient matrix is left-circulant.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSystem {
    pub g: u64,
    pub matrix: LeftCirculant,
    pub rhs: Vec<CycloNum>,
    /// `unknowns[l] = g^l`, the s of the t_s stored in x_l.
    pub unknowns: Vec<u64>,
}

impl CirculantSystem {
    /// Maps a solution (x_0, …, x_{p-2}) back to (t_1, …, t_{p-1}).
    pub fn to_natural<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (l, &s) in self.unknowns.iter().enumerate() {
            out[(s - 1) as usize] = x[l].clone();
        }
        out
    }
}

pub fn reorder_circulant(system: &LinearSystem, g: u64) -> Result<CirculantSystem> {
    let p = system.p;
    check_primitive(g, p)?;
    let g_el = PElem::new_unchecked(g, p);
    let unknowns: Vec<u64> = (0..p - 1).map(|l| g_el.pow(l).value()).collect();
    let idx = |s: u64| (s - 1) as usize;
    let dense: Matrix = unknowns
        .iter()
        .map(|&u| unknowns.iter().map(|&s| system.matrix[idx(u)][idx(s)].clone()).collect())
        .collect();
    let matrix = LeftCirculant::from_dense(&dense)?;
    let rhs = unknowns.iter().map(|&u| system.rhs[idx(u)].clone()).collect();
    Ok(CirculantSystem {
        g,
        matrix,
        rhs,
        unknowns,
    })
}

/// Turns an exact solution component into a certified nonnegative count.
fn certify(value: &CycloNum, index: usize) -> Result<u128> {
    let r = value
        .as_rational()
        .map_err(|_| Error::NonIntegerSolution { index })?;
    if !r.is_integer() {
        return Err(Error::NonIntegerSolution { index });
    }
    if r.is_negative() {
        return Err(Error::NegativeCount { index });
    }
    r.to_integer()
        .to_u128()
        .ok_or(Error::NonIntegerSolution { index })
}

/// Hard postcondition: every lifted sum obeys |K^{(m)}(u)| ≤ 2√q.
fn enforce_weil(profile: &KloostermanProfile, q: u128) -> Result<()> {
    for (u, k) in (1..).zip(&profile.lifted_sums) {
        if !check_weil(k, q)? {
            return Err(Error::WeilViolation {
                u,
                value: k.to_f64(),
                bound: weil_bound(q),
            });
        }
    }
    Ok(())
}

/// Solves the natural-order system exactly and certifies integer counts.
pub fn solve_t1s(p: u64, m: u32) -> Result<SolutionVector> {
    ensure_prime(p)?;
    if m == 0 {
        return Err(Error::BadDegree);
    }
    let profile = KloostermanProfile::new(p, m)?;
    solve_with_profile(&profile)
}

pub fn solve_with_profile(profile: &KloostermanProfile) -> Result<SolutionVector> {
    let q = field_order(profile.p, profile.m)?;
    enforce_weil(profile, q)?;
    let system = build_system_from(profile)?;
    let x = linalg::solve(&system.matrix, &system.rhs)?;
    let t = x
        .iter()
        .enumerate()
        .map(|(i, v)| certify(v, i))
        .collect::<Result<Vec<_>>>()?;
    let sum: u128 = t.iter().sum();
    if sum > q / profile.p as u128 {
        return Err(Error::TableInvariant(format!(
            "sum of T1s = {sum} exceeds q/p"
        )));
    }
    Ok(SolutionVector {
        p: profile.p,
        m: profile.m,
        t,
    })
}

/// Completes the table from T_{1s}.
pub fn table_from_solution(sol: &SolutionVector, modulus: Vec<u64>) -> Result<TraceCotraceTable> {
    let (p, m) = (sol.p, sol.m);
    let q = field_order(p, m)?;
    let fiber = q / p as u128;
    let sum: u128 = sol.t.iter().sum();
    let t10 = fiber - sum;
    // T00 = (p-1) Σ T1s + 2q/p - q - 1, rearranged to stay unsigned
    let t00 = ((p as u128 - 1) * sum + 2 * fiber)
        .checked_sub(q + 1)
        .ok_or_else(|| Error::TableInvariant("T00 would be negative".into()))?;
    let n = p as usize;
    let mut counts = vec![vec![0u128; n]; n];
    counts[0][0] = t00;
    for i in 1..n {
        counts[0][i] = t10;
        counts[i][0] = t10;
        for j in 1..n {
            counts[i][j] = sol.t[i * j % n - 1];
        }
    }
    let table = TraceCotraceTable {
        p,
        m,
        q,
        modulus,
        counts,
    };
    table.check_invariants()?;
    Ok(table)
}

/// The full table via the closed-form pipeline. The modulus recorded is the
/// smallest irreducible; counts do not depend on it.
pub fn full_table(p: u64, m: u32) -> Result<TraceCotraceTable> {
    let sol = solve_t1s(p, m)?;
    table_from_solution(&sol, find_irreducible(p, m as usize)?)
}

/// Same counts, recorded against a caller-chosen modulus.
pub fn full_table_with_modulus(p: u64, modulus: Vec<u64>) -> Result<TraceCotraceTable> {
    let ctx = crate::ext_field::FieldCtx::with_modulus(p, modulus)?;
    let sol = solve_t1s(p, ctx.m() as u32)?;
    table_from_solution(&sol, ctx.modulus().to_vec())
}

/// (T00, T01, T11) in characteristic 2 from the binomial-sum formulas,
/// with σ = Σ_r (-1)^{m+r+1} C(m, 2r) 7^r:
/// T11 = (2^m + 1)/4 + σ/2^{m+1}, T00 = (2^m - 3)/4 + σ/2^{m+1},
/// T01 = (2^m - 1)/4 - σ/2^{m+1}.
pub fn closed_form_char2(m: u32) -> Result<(u128, u128, u128)> {
    if m == 0 {
        return Err(Error::BadDegree);
    }
    let binom = crate::kloosterman::binomial_row(m);
    // Σ_r (-1)^{m+r+1} C(m, 2r) 7^r
    let sigma: BigInt = (0..=m / 2)
        .map(|r| {
            let term = &binom[2 * r as usize] * BigInt::from(7).pow(r);
            if (m + r + 1) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let two_m = BigInt::from(1) << m;
    let frac = |n: BigInt, d: BigInt| BigRational::new(n, d);
    let s = frac(sigma.clone(), &two_m << 1);
    let t11 = frac(&two_m + 1, 4.into()) + &s;
    let t00 = frac(&two_m - 3, 4.into()) + &s;
    // T01 = q/2 - T11; the 1/2^m-weighted variant overcounts by exactly 2x
    let t01 = frac(&two_m - 1, 4.into()) - &s;
    let to_count = |r: BigRational, index| {
        if !r.is_integer() {
            return Err(Error::NonIntegerSolution { index });
        }
        r.to_integer()
            .to_u128()
            .ok_or(Error::NegativeCount { index })
    };
    Ok((to_count(t00, 0)?, to_count(t01, 1)?, to_count(t11, 2)?))
}

/// φ realised in Q(ζ_5) as ζ + ζ⁴ = 2cos(2π/5).
pub fn phi_q5() -> CycloNum {
    zeta_pow(1, 5).unwrap() + zeta_pow(4, 5).unwrap()
}

/// Evaluates the char-3 solution formulas as printed:
/// (T11, T12, T00, T01).
pub fn char3_expressions(m: u32) -> Result<[CycloNum; 4]> {
    let prof = KloostermanProfile::new(3, m)?;
    let q = field_order(3, m)?;
    let (k1, k2) = (prof.lifted(1), prof.lifted(2));
    let c = |v: i64| CycloNum::from_int(v, 3);
    let base = |shift: i64| CycloNum::from_int(BigInt::from(q) + shift, 3);
    let ninth = BigRational::new(1.into(), 9.into());
    let t11 = (base(1) + (-k1 + &(k2 * &c(2)))).scale(&ninth);
    let t12 = (base(1) + (k1 * &c(2) - k2)).scale(&ninth);
    let t00 = (base(-5) + (k1 * &c(2) + k2 * &c(2))).scale(&ninth);
    let t01 = (base(-2) - (k1 + k2)).scale(&ninth);
    Ok([t11, t12, t00, t01])
}

/// The char-5 solution formulas evaluated verbatim for a given φ.
#[derive(Debug, Clone, PartialEq)]
pub struct Char5Expressions {
    /// Rows printed for T11, T12, T13, T14.
    pub rows: [CycloNum; 4],
    /// T00 exactly as printed: (5^m - 9)/25 + (Σ K^{(m)})/25.
    pub t00_printed: CycloNum,
    /// T00 from the same derivation as T01: (5^m - 9)/25 + 4(Σ K^{(m)})/25.
    pub t00_derived: CycloNum,
    pub t01: CycloNum,
}

pub fn char5_expressions(m: u32, phi: &CycloNum) -> Result<Char5Expressions> {
    let prof = KloostermanProfile::new(5, m)?;
    let q = field_order(5, m)?;
    let k = |u: u64| prof.lifted(u).clone();
    let c = |v: i64| CycloNum::from_int(v, 5);
    // (rational part, φ part) coefficient rows on (K1, K2, K3, K4)
    let rows: [([i64; 4], [i64; 4]); 4] = [
        ([2, 0, -2, 1], [1, 2, -2, -1]),
        ([0, 1, 2, -2], [2, -1, 1, -2]),
        ([-2, 2, 1, 0], [-2, 1, -1, 2]),
        ([1, -2, 0, 2], [-1, -2, 2, 1]),
    ];
    let combo = |coef: &[i64; 4]| {
        (1..=4u64).fold(CycloNum::zero(5), |acc, u| acc + k(u) * c(coef[(u - 1) as usize]))
    };
    let inv25 = BigRational::new(1.into(), 25.into());
    let base = |shift: i64| CycloNum::from_int(BigInt::from(q) + shift, 5);
    let evaluated: Vec<CycloNum> = rows
        .iter()
        .map(|(plain, with_phi)| (base(1) + combo(plain) + phi * &combo(with_phi)).scale(&inv25))
        .collect();
    let ksum = combo(&[1, 1, 1, 1]);
    Ok(Char5Expressions {
        rows: evaluated.try_into().expect("four rows"),
        t00_printed: (base(-9) + ksum.clone()).scale(&inv25),
        t00_derived: (base(-9) + ksum.clone() * c(4)).scale(&inv25),
        t01: (base(-4) - ksum).scale(&inv25),
    })
}

/// Σ_l |r_l| over the first row of R = K^{-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualBound {
    pub p: u64,
    /// First row of R for the smallest primitive root.
    pub inverse_row: Vec<CycloNum>,
    /// Exact Σ |r_l|, a real element of Q(ζ_p).
    pub exact: CycloNum,
    pub value: f64,
}

pub fn residual_bound(p: u64) -> Result<ResidualBound> {
    ensure_prime(p)?;
    let g = primitive_root(p)?.value();
    let profile = KloostermanProfile::new(p, 1)?;
    let k = crate::circulant::system_matrix(&profile, g)?;
    let r = k.invert_exact()?;
    let exact = r
        .first_row()
        .iter()
        .fold(CycloNum::zero(p), |acc, x| acc + x.abs_real());
    Ok(ResidualBound {
        p,
        inverse_row: r.first_row().to_vec(),
        value: exact.to_f64(),
        exact,
    })
}

/// Which table entry a report row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cell {
    T00,
    T01,
    T1(u64),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::T00 => write!(f, "T00"),
            Cell::T01 => write!(f, "T01"),
            Cell::T1(s) => write!(f, "T1{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub m: u32,
    pub cell: Cell,
    pub count: u128,
    /// count / p^m
    pub ratio: f64,
    /// |count - (q+1)/p²|
    pub deviation: f64,
    pub bound: f64,
}

/// Deviation of each count from (q+1)/p² against its Weil-derived bound.
///
/// For T_{1s} the bound is R_p (p-1) 2√q. For the zero row the same
/// argument gives |T01 - (q+1)/p²| ≤ 1/p + (p-1) 2√q / p² and
/// |T00 - (q+1)/p²| ≤ 2/p + (p-1)² 2√q / p².
pub fn asymptotic_report(p: u64, m_range: RangeInclusive<u32>) -> Result<Vec<AsymptoticRow>> {
    let rp = residual_bound(p)?.value;
    let pf = p as f64;
    let mut rows = Vec::new();
    for m in m_range {
        if m == 0 {
            return Err(Error::BadDegree);
        }
        let q = field_order(p, m)?;
        let sol = solve_t1s(p, m)?;
        let table = table_from_solution(&sol, Vec::new())?;
        let center = BigRational::new(BigInt::from(q) + 1, BigInt::from(p * p));
        let w = weil_bound(q);
        let mut cells = vec![
            (Cell::T00, table.get(0, 0), 2.0 / pf + (pf - 1.0).powi(2) * w / (pf * pf)),
            (Cell::T01, table.get(0, 1), 1.0 / pf + (pf - 1.0) * w / (pf * pf)),
        ];
        for s in 1..p {
            cells.push((Cell::T1(s), table.get(1, s), rp * (pf - 1.0) * w));
        }
        for (cell, count, bound) in cells {
            let dev = (BigRational::from_integer(count.into()) - &center).abs();
            let deviation = dev.to_f64().unwrap_or(f64::INFINITY);
            if deviation > bound {
                return Err(Error::BoundViolation {
                    m,
                    cell: cell.to_string(),
                    deviation,
                    bound,
                });
            }
            rows.push(AsymptoticRow {
                m,
                cell,
                count,
                ratio: count as f64 / q as f64,
                deviation,
                bound,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64, p: u64) -> CycloNum {
        CycloNum::from_int(v, p)
    }

    #[test]
    fn worked_system_p3_m2() {
        let sys = build_system(3, 2).unwrap();
        assert_eq!(sys.matrix, vec![vec![int(3, 3), int(6, 3)], vec![int(6, 3), int(3, 3)]]);
        assert_eq!(sys.rhs, vec![int(15, 3), int(12, 3)]);
        assert_eq!(solve_t1s(3, 2).unwrap().t, vec![1, 2]);
    }

    #[test]
    fn char2_system_is_one_equation() {
        let sys = build_system(2, 2).unwrap();
        assert_eq!(sys.matrix, vec![vec![int(4, 2)]]);
        assert_eq!(sys.rhs, vec![int(8, 2)]);
    }

    #[test]
    fn natural_matrix_is_symmetric() {
        let sys = build_system(7, 3).unwrap();
        assert_eq!(sys.matrix, linalg::transpose(&sys.matrix));
    }

    #[test]
    fn reorder_p3() {
        let sys = build_system(3, 2).unwrap();
        let circ = reorder_circulant(&sys, 2).unwrap();
        assert_eq!(circ.unknowns, vec![1, 2]);
        assert_eq!(circ.matrix.first_row(), &[int(3, 3), int(6, 3)]);
        let sys2 = build_system(2, 4).unwrap();
        let c2 = reorder_circulant(&sys2, 1).unwrap();
        assert_eq!(c2.matrix.to_dense(), sys2.matrix);
        assert!(matches!(
            reorder_circulant(&build_system(7, 1).unwrap(), 2),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn solutions_from_tables() {
        assert_eq!(solve_t1s(2, 5).unwrap().t, vec![11]);
        assert_eq!(solve_t1s(5, 3).unwrap().t, vec![0, 6, 6, 7]);
        assert_eq!(solve_t1s(4, 3), Err(Error::NotPrime(4)));
        assert_eq!(solve_t1s(3, 0), Err(Error::BadDegree));
    }

    #[test]
    fn full_tables() {
        let t = full_table(3, 1).unwrap();
        assert_eq!(t.counts, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let t = full_table(2, 8).unwrap();
        assert_eq!((t.get(0, 0), t.get(0, 1), t.get(1, 1)), (71, 56, 72));
        let t = full_table(5, 2).unwrap();
        assert_eq!(t.get(0, 0), 4);
        assert_eq!(t.get(0, 1), 0);
        assert_eq!(t.t1s(), vec![2, 0, 2, 1]);
    }

    #[test]
    fn invariant_checker_catches_asymmetry() {
        let mut t = full_table(3, 4).unwrap();
        t.counts[1][2] += 1;
        t.counts[1][1] -= 1;
        assert!(matches!(t.check_invariants(), Err(Error::TableInvariant(_))));
    }

    #[test]
    fn char2_closed_forms() {
        assert_eq!(closed_form_char2(2).unwrap(), (1, 0, 2));
        assert_eq!(closed_form_char2(3).unwrap(), (0, 3, 1));
        assert_eq!(closed_form_char2(10).unwrap(), (241, 270, 242));
    }

    #[test]
    fn residual_bounds() {
        let r2 = residual_bound(2).unwrap();
        assert_eq!(r2.exact.as_rational().unwrap(), BigRational::new(1.into(), 4.into()));
        let r3 = residual_bound(3).unwrap();
        assert_eq!(r3.exact.as_rational().unwrap(), BigRational::new(1.into(), 3.into()));
        for p in [2, 3, 5, 7] {
            assert!(residual_bound(p).unwrap().value * (p * p) as f64 >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn asymptotic_examples() {
        let rows = asymptotic_report(2, 10..=10).unwrap();
        let t11 = rows.iter().find(|r| r.cell == Cell::T1(1)).unwrap();
        assert_eq!(t11.count, 242);
        assert!((t11.deviation - 14.25).abs() < 1e-12);
        assert!((t11.bound - 16.0).abs() < 1e-12);
        let rows = asymptotic_report(3, 6..=6).unwrap();
        let t11 = rows.iter().find(|r| r.cell == Cell::T1(1)).unwrap();
        assert_eq!(t11.count, 72);
        assert!((t11.deviation - (72.0 - 730.0 / 9.0f64).abs()).abs() < 1e-9);
        assert!((t11.bound - 36.0).abs() < 1e-9);
    }
}
