//! Left-circulant matrices over Q(ζ_p).
//!
//! Row `i` is the first row rotated left by `i`, so entry (i, j) is
//! `first_row[(i + j) mod n]`. Such matrices are symmetric.

use num_complex::Complex64;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::kloosterman::KloostermanProfile;
use crate::linalg::{self, Matrix};
use crate::prime_field::{is_primitive, PElem};

#[derive(Debug, Clone, PartialEq)]
pub struct LeftCirculant {
    first_row: Vec<CycloNum>,
}

impl LeftCirculant {
    pub fn new(first_row: Vec<CycloNum>) -> Result<Self> {
        assert!(!first_row.is_empty(), "empty circulant");
        let p = first_row[0].p();
        if let Some(bad) = first_row.iter().find(|c| c.p() != p) {
            return Err(Error::ConductorMismatch(p, bad.p()));
        }
        Ok(Self { first_row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn p(&self) -> u64 {
        self.first_row[0].p()
    }

    pub fn first_row(&self) -> &[CycloNum] {
        &self.first_row
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloNum {
        &self.first_row[(i + j) % self.n()]
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// Compresses a dense matrix, failing if it is not left-circulant.
    pub fn from_dense(a: &Matrix) -> Result<Self> {
        let n = a.len();
        let candidate = Self::new(a[0].clone())?;
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x != candidate.entry(i, j) || row.len() != n {
                    return Err(Error::NotCirculant);
                }
            }
        }
        Ok(candidate)
    }

    pub fn row_sum(&self) -> CycloNum {
        self.first_row
            .iter()
            .fold(CycloNum::zero(self.p()), |acc, x| acc + x)
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det_exact(&self) -> CycloNum {
        linalg::det(&self.to_dense())
    }

    /// Determinant from the circulant eigenvalues,
    /// (-1)^{(n-1)(n-2)/2} Π_l f(θ_l) with f(x) = Σ a_r x^r over the n-th
    /// roots of unity θ_l.
    pub fn det_eigen(&self) -> Complex64 {
        let n = self.n();
        let coeffs: Vec<Complex64> = self.first_row.iter().map(CycloNum::embed_complex).collect();
        let product: Complex64 = (0..n)
            .map(|l| {
                let theta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * l as f64 / n as f64);
                // Horner
                coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * theta + a)
            })
            .product();
        if ((n - 1) * n.saturating_sub(2) / 2) % 2 == 1 {
            -product
        } else {
            product
        }
    }

    /// Exact inverse, checked to be left-circulant before compression.
    pub fn invert_exact(&self) -> Result<Self> {
        let inv = linalg::inverse(&self.to_dense())?;
        Self::from_dense(&inv)
    }

    /// Verifies that the first-row sum of the inverse is the reciprocal of
    /// the first-row sum.
    pub fn row_sum_reciprocal_check(&self) -> Result<RowSumReport> {
        let inv = self.invert_exact()?;
        let row_sum = self.row_sum();
        let inverse_row_sum = inv.row_sum();
        let passed = (&row_sum * &inverse_row_sum).is_one();
        Ok(RowSumReport {
            row_sum,
            inverse_row_sum,
            passed,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let a = self.to_dense();
        a == linalg::transpose(&a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowSumReport {
    pub row_sum: CycloNum,
    pub inverse_row_sum: CycloNum,
    pub passed: bool,
}

/// Closed form (x + (n-1)y)(x - y)^{n-1} for the determinant of the n×n
/// matrix with `x` on the diagonal and `y` elsewhere.
pub fn xy_det(n: usize, x: &CycloNum, y: &CycloNum) -> CycloNum {
    assert!(n >= 1);
    let p = x.p();
    let head = x + &(y * &CycloNum::from_int(n as i64 - 1, p));
    &head * &(x - y).pow(n as u32 - 1)
}

pub fn xy_matrix(n: usize, x: &CycloNum, y: &CycloNum) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { x.clone() } else { y.clone() }).collect())
        .collect()
}

/// The coefficient matrix K of the circulant system, first row
/// (K(g^l) + p + 1)_{l=0..p-2}.
pub fn system_matrix(profile: &KloostermanProfile, g: u64) -> Result<LeftCirculant> {
    let p = profile.p;
    check_primitive(g, p)?;
    let shift = CycloNum::from_int(p as i64 + 1, p);
    let g = PElem::new_unchecked(g, p);
    LeftCirculant::new(
        (0..p - 1)
            .map(|l| profile.prime(g.pow(l).value()) + &shift)
            .collect(),
    )
}

/// K' with first row (K(1), K(g), …, K(g^{p-2})).
pub fn kloosterman_matrix(profile: &KloostermanProfile, g: u64) -> Result<LeftCirculant> {
    let p = profile.p;
    check_primitive(g, p)?;
    let g = PElem::new_unchecked(g, p);
    LeftCirculant::new(
        (0..p - 1)
            .map(|l| profile.prime(g.pow(l).value()).clone())
            .collect(),
    )
}

pub(crate) fn check_primitive(g: u64, p: u64) -> Result<()> {
    if g % p != 0 && is_primitive(PElem::new_unchecked(g, p)) {
        Ok(())
    } else {
        Err(Error::NotPrimitive { g, p })
    }
}

/// `true` iff `a` equals the xy-shaped matrix with the given entries.
pub fn has_xy_shape(a: &Matrix, x: &CycloNum, y: &CycloNum) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v == x } else { v == y })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(v: i64, p: u64) -> CycloNum {
        CycloNum::from_int(v, p)
    }

    fn rat(n: i64, d: i64, p: u64) -> CycloNum {
        CycloNum::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)), p)
    }

    fn circ(row: &[i64], p: u64) -> LeftCirculant {
        LeftCirculant::new(row.iter().map(|&v| int(v, p)).collect()).unwrap()
    }

    #[test]
    fn layout() {
        let c = circ(&[1, 2, 3], 5);
        let d = c.to_dense();
        assert_eq!(d[1], vec![int(2, 5), int(3, 5), int(1, 5)]);
        assert_eq!(d[2], vec![int(3, 5), int(1, 5), int(2, 5)]);
        assert!(c.is_symmetric());
    }

    #[test]
    fn p3_determinants() {
        let kp = circ(&[-1, 2], 3);
        assert_eq!(kp.det_exact(), int(-3, 3));
        assert!((kp.det_eigen() - Complex64::new(-3.0, 0.0)).norm() < 1e-9);
        let k = circ(&[3, 6], 3);
        assert_eq!(k.det_exact(), int(-27, 3));
        assert_eq!(circ(&[4], 2).det_exact(), int(4, 2));
        assert!(circ(&[1, 1, 1], 5).det_eigen().norm() < 1e-9);
        assert!(circ(&[1, 1, 1], 5).det_exact().is_zero());
    }

    #[test]
    fn eigen_sign_matches_elimination() {
        for row in [&[1i64, 2, 3][..], &[2, 0, 1, 5], &[1, -1, 4, 2, 7], &[3, 1, 4, 1, 5, 9]] {
            let c = circ(row, 7);
            let exact = c.det_exact().to_f64();
            let eig = c.det_eigen();
            assert!((eig.re - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{row:?}");
            assert!(eig.im.abs() < 1e-6 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(circ(&[4], 2).invert_exact().unwrap().first_row(), &[rat(1, 4, 2)]);
        let r = circ(&[3, 6], 3).invert_exact().unwrap();
        assert_eq!(r.first_row(), &[rat(-1, 9, 3), rat(2, 9, 3)]);
        assert_eq!(circ(&[1, 1], 3).invert_exact(), Err(Error::Singular));
        let c = circ(&[2, 7, 1, 8], 5);
        let prod = linalg::mat_mul(&c.to_dense(), &c.invert_exact().unwrap().to_dense());
        assert_eq!(prod, linalg::identity(4, 5));
    }

    #[test]
    fn row_sums() {
        let rep = circ(&[3, 6], 3).row_sum_reciprocal_check().unwrap();
        assert!(rep.passed);
        assert_eq!(rep.row_sum, int(9, 3));
        assert_eq!(rep.inverse_row_sum, rat(1, 9, 3));
        let rep = circ(&[4], 2).row_sum_reciprocal_check().unwrap();
        assert_eq!(rep.inverse_row_sum, rat(1, 4, 2));
    }

    #[test]
    fn xy_closed_form() {
        assert_eq!(xy_det(2, &int(3, 5), &int(1, 5)), int(8, 5));
        assert!(xy_det(4, &int(3, 5), &int(3, 5)).is_zero());
        assert_eq!(xy_det(4, &int(19, 5), &int(-6, 5)), int(5i64.pow(6), 5));
        for n in 1..6 {
            let (x, y) = (int(5, 3), int(-2, 3));
            assert_eq!(linalg::det(&xy_matrix(n, &x, &y)), xy_det(n, &x, &y));
        }
    }

    #[test]
    fn system_matrices_need_primitive_roots() {
        let prof = KloostermanProfile::new(3, 2).unwrap();
        assert_eq!(system_matrix(&prof, 2).unwrap().first_row(), &[int(3, 3), int(6, 3)]);
        assert_eq!(kloosterman_matrix(&prof, 2).unwrap().first_row(), &[int(-1, 3), int(2, 3)]);
        let prof7 = KloostermanProfile::new(7, 1).unwrap();
        assert!(matches!(system_matrix(&prof7, 2), Err(Error::NotPrimitive { .. })));
    }
}
