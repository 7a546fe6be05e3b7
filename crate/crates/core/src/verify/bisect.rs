//! Brute-force threshold for the negative top coefficient of a polynomial preserver.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmat::psd::exact_certificate;
use crate::exactmat::Matrix;
use crate::scalar::Rational;
use crate::transforms::{threshold_family, ThresholdSide, Transform};

/// Settings for [`threshold_by_bisection`].
#[derive(Debug, Clone, PartialEq)]
pub struct Bisection {
    /// Base of the rank-one family, in `(0,1)`.
    pub b: Rational,
    /// Family members use `n = 1..=n_max` on both sides.
    pub n_max: u32,
    pub iterations: usize,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection { b: Rational::new(1.into(), 2.into()), n_max: 40, iterations: 50 }
    }
}

fn preserves_all(t: &Transform, family: &[Matrix<Rational>]) -> Result<bool> {
    for a in family {
        if exact_certificate(&t.apply(a)?)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The most negative `c′` for which `Σ c_j z^j + c′ z^M` keeps every member of
/// the rank-one threshold family PSD, located by exact bisection. Returns the
/// passing end of the final bracket.
pub fn threshold_by_bisection(c: &[Rational], m: u32, rho: &Rational, cfg: &Bisection) -> Result<Rational> {
    let n = c.len();
    if n == 0 || (m as usize) < n {
        return Err(Error::Precondition(format!("need 1 <= N = {n} <= M = {m}")));
    }
    let mut family = Vec::with_capacity(2 * cfg.n_max as usize);
    for k in 1..=cfg.n_max {
        for side in [ThresholdSide::Inner, ThresholdSide::Outer] {
            family.push(threshold_family(&cfg.b, k, n, rho, side)?);
        }
    }
    let with = |cp: &Rational| Transform::PolyPlusPower { coeffs: c.to_vec(), c_prime: cp.clone(), m };
    let mut hi = Rational::zero();
    if !preserves_all(&with(&hi), &family)? {
        return Err(Error::Precondition("the polynomial fails already with c' = 0".into()));
    }
    let mut lo = -Rational::one();
    while preserves_all(&with(&lo), &family)? {
        hi = lo.clone();
        lo *= Rational::from_integer(2.into());
        if lo < Rational::from_integer((-1i64 << 40).into()) {
            return Err(Error::Precondition("no failing c' found; the family does not bound the threshold".into()));
        }
    }
    for _ in 0..cfg.iterations {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if preserves_all(&with(&mid), &family)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
