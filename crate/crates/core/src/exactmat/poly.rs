//! Univariate polynomials over the rationals and polynomial-matrix determinants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

use super::Matrix;
use crate::error::Result;
use crate::scalar::Rational;

/// Polynomial in one variable; `coeffs[d]` multiplies `x^d`. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * Rational::from_integer(d.into()))
                .collect(),
        )
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        Self::new(self.coeffs.iter().take(cap + 1).cloned().collect())
    }

    /// Product with all terms above `cap` discarded (never formed).
    pub fn mul_trunc(&self, other: &Self, cap: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(cap + 1);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(c·x)`.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: Self) -> Self {
        &self + &(-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> Self {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: Self) -> Self {
        let cap = self.coeffs.len() + rhs.coeffs.len();
        self.mul_trunc(&rhs, cap)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{d}")?,
            }
        }
        Ok(())
    }
}

/// The matrix `f[xA]` with entries `f(x·a_ij)` as polynomials in `x`.
pub fn entrywise_poly(f: &UniPoly, a: &Matrix<Rational>) -> Matrix<UniPoly> {
    a.map(|v| f.scale_var(v))
}

/// Determinant of a polynomial matrix, truncated after degree `cap`.
///
/// Expands along rows with memoised column-subset minors, so only ring
/// operations are used and every product is truncated at `cap`.
pub fn det_series(a: &Matrix<UniPoly>, cap: usize) -> Result<UniPoly> {
    a.ensure_square("det_series")?;
    let n = a.rows();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    // minors[mask]: determinant of rows (n - popcount(mask))..n on columns in mask
    let full = 1usize << n;
    let mut minors = vec![UniPoly::zero(); full];
    minors[0] = UniPoly::one();
    let mut masks: Vec<usize> = (1..full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = UniPoly::zero();
        let mut position = 0usize;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &a[(row, col)];
            let rest = &minors[mask & !(1 << col)];
            if !entry.is_zero() && !rest.is_zero() {
                let term = entry.mul_trunc(rest, cap);
                acc = if position % 2 == 0 { &acc + &term } else { acc - term };
            }
            position += 1;
        }
        minors[mask] = acc;
    }
    Ok(minors[full - 1].clone())
}
