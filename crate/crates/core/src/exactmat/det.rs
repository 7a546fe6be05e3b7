//! Determinants, minors, adjugates and Hadamard products.

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators, so the
/// elimination itself runs over the integers with exact divisions.
pub fn det_exact(a: &Matrix<Rational>) -> Result<Rational> {
    a.ensure_square("determinant")?;
    let n = a.rows();
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = a.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(a.row(i).iter().map(|v| v.numer() * (&l / v.denom())).collect());
        scale *= l;
    }
    Ok(Rational::new(bareiss(rows), scale))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Floating determinant by LU with partial pivoting.
pub fn det_float(a: &Matrix<f64>) -> Result<f64> {
    a.ensure_square("determinant")?;
    let n = a.rows();
    let mut m = a.to_rows();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[x][k].abs().total_cmp(&m[y][k].abs()))
            .unwrap_or(k);
        if m[p][k] == 0.0 {
            return Ok(0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    Ok(det)
}

fn check_index_sets(a_rows: usize, a_cols: usize, rows: &[usize], cols: &[usize]) -> Result<()> {
    if rows.len() != cols.len() {
        return Err(Error::Index(format!(
            "minor needs equal-size index sets, got {} rows and {} columns",
            rows.len(),
            cols.len()
        )));
    }
    if rows.iter().any(|&r| r >= a_rows) || cols.iter().any(|&c| c >= a_cols) {
        return Err(Error::Index("minor index out of bounds".into()));
    }
    Ok(())
}

/// Determinant of the submatrix on `rows × cols`.
pub fn minor(a: &Matrix<Rational>, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    check_index_sets(a.rows(), a.cols(), rows, cols)?;
    det_exact(&a.select(rows, cols)?)
}

pub fn minor_float(a: &Matrix<f64>, rows: &[usize], cols: &[usize]) -> Result<f64> {
    check_index_sets(a.rows(), a.cols(), rows, cols)?;
    det_float(&a.select(rows, cols)?)
}

/// Adjugate (transposed cofactor matrix); satisfies `A·adj(A) = det(A)·I`.
pub fn adjugate(a: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    a.ensure_square("adjugate")?;
    let n = a.rows();
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let mut adj = Matrix::zeros(n, n);
    for i in 0..n {
        let keep_rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        for j in 0..n {
            let keep_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = det_exact(&a.select(&keep_rows, &keep_cols)?)?;
            adj[(j, i)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(adj)
}

/// Entrywise (Schur) product.
pub fn hadamard<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.ensure_same_shape(b)?;
    Ok(Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].clone() * b[(i, j)].clone()))
}

/// Entrywise power. Non-integer exponents need every entry strictly positive.
pub fn hadamard_pow<T: Scalar>(a: &Matrix<T>, alpha: f64) -> Result<Matrix<T>> {
    let integral = alpha.is_finite() && alpha.fract() == 0.0;
    a.try_map(|v| {
        if !integral && *v <= T::zero() {
            return Err(Error::Domain(format!("non-integer power {alpha} of non-positive {v}")));
        }
        v.powf(alpha)
    })
}
