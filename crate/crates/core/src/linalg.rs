//! Dense exact linear algebra over Q(ζ_p) by Gaussian elimination.

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<CycloNum>>;

fn conductor(a: &Matrix) -> u64 {
    a[0][0].p()
}

pub fn identity(n: usize, p: u64) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CycloNum::one(p) } else { CycloNum::zero(p) })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let p = conductor(a);
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(CycloNum::zero(p), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Nonzero entry of least height in the trailing block starting at `k`.
fn choose_pivot(a: &Matrix, k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(u64, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, x) in row.iter().enumerate().take(n).skip(k) {
            if x.is_zero() {
                continue;
            }
            let h = x.height();
            if best.is_none_or(|(bh, _, _)| h < bh) {
                best = Some((h, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Determinant by elimination with full pivoting.
pub fn det(a: &Matrix) -> CycloNum {
    let p = conductor(a);
    let n = a.len();
    let mut a = a.clone();
    let mut det = CycloNum::one(p);
    let mut negate = false;
    for k in 0..n {
        let Some((pi, pj)) = choose_pivot(&a, k) else {
            return CycloNum::zero(p);
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        let inv = a[k][k].invert().expect("pivot is nonzero");
        det = &det * &a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for j in k + 1..n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
            row[k] = CycloNum::zero(p);
        }
    }
    if negate {
        -det
    } else {
        det
    }
}

/// Solves `a · x = b` exactly; errors if `a` is singular.
pub fn solve(a: &Matrix, b: &[CycloNum]) -> Result<Vec<CycloNum>> {
    let p = conductor(a);
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    // column permutation: position k holds unknown cols[k]
    let mut cols: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (pi, pj) = choose_pivot(&aug, k).ok_or(Error::Singular)?;
        aug.swap(pi, k);
        if pj != k {
            for row in aug.iter_mut() {
                row.swap(pj, k);
            }
            cols.swap(pj, k);
        }
        let inv = aug[k][k].invert().expect("pivot is nonzero");
        let (top, rest) = aug.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for j in k + 1..=n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
            row[k] = CycloNum::zero(p);
        }
    }
    let mut y = vec![CycloNum::zero(p); n];
    for k in (0..n).rev() {
        let mut acc = aug[k][n].clone();
        for j in k + 1..n {
            acc = &acc - &(&aug[k][j] * &y[j]);
        }
        y[k] = &acc * &aug[k][k].invert().expect("pivot is nonzero");
    }
    let mut x = vec![CycloNum::zero(p); n];
    for (k, v) in y.into_iter().enumerate() {
        x[cols[k]] = v;
    }
    Ok(x)
}

/// Full inverse by Gauss–Jordan elimination.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let p = conductor(a);
    let n = a.len();
    let mut left = a.clone();
    let mut right = identity(n, p);
    for k in 0..n {
        let pi = (k..n)
            .filter(|&i| !left[i][k].is_zero())
            .min_by_key(|&i| left[i][k].height())
            .ok_or(Error::Singular)?;
        left.swap(pi, k);
        right.swap(pi, k);
        let inv = left[k][k].invert().expect("pivot is nonzero");
        for j in 0..n {
            left[k][j] = &left[k][j] * &inv;
            right[k][j] = &right[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || left[i][k].is_zero() {
                continue;
            }
            let f = left[i][k].clone();
            for j in 0..n {
                if !left[k][j].is_zero() {
                    left[i][j] = &left[i][j] - &(&f * &left[k][j]);
                }
                if !right[k][j].is_zero() {
                    right[i][j] = &right[i][j] - &(&f * &right[k][j]);
                }
            }
        }
    }
    Ok(right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::zeta_pow;

    fn int(v: i64, p: u64) -> CycloNum {
        CycloNum::from_int(v, p)
    }

    fn int_matrix(rows: &[&[i64]], p: u64) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v, p)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&int_matrix(&[&[3, 6], &[6, 3]], 3)), int(-27, 3));
        assert_eq!(det(&int_matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]], 5)), int(0, 5));
        // needs a row swap: leading zero
        assert_eq!(det(&int_matrix(&[&[0, 2], &[3, 1]], 7)), int(-6, 7));
        assert_eq!(
            det(&int_matrix(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]], 5)),
            int(6, 5)
        );
    }

    #[test]
    fn solve_and_inverse_agree() {
        let p = 7;
        let z = |k| zeta_pow(k, p).unwrap();
        let a: Matrix = vec![
            vec![z(1) + int(2, p), z(3), int(1, p)],
            vec![int(0, p), z(2) - z(5), int(4, p)],
            vec![z(6), int(-1, p), z(1) * z(1) + int(3, p)],
        ];
        let b = vec![z(4), int(1, p), z(2) + int(1, p)];
        let x = solve(&a, &b).unwrap();
        let xs: Matrix = x.iter().map(|v| vec![v.clone()]).collect();
        let ax = mat_mul(&a, &xs);
        for (row, want) in ax.iter().zip(&b) {
            assert_eq!(&row[0], want);
        }
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3, p));
        assert_eq!(&det(&a) * &det(&inv), int(1, p));
    }

    #[test]
    fn singular_is_reported() {
        let a = int_matrix(&[&[1, 2], &[2, 4]], 3);
        assert_eq!(solve(&a, &[int(1, 3), int(2, 3)]), Err(Error::Singular));
        assert_eq!(inverse(&a), Err(Error::Singular));
    }
}
