//! Thresholds for polynomial preservers, hook Schur values at the all-ones
//! point, power-function criteria and two-atom interpolation.

use num::bigint::BigUint;
use num::integer::binomial;
use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{Matrix, PsdCertificate};
use crate::scalar::{rational_serde, Rational, Scalar};

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

/// `s_{μ(M,N,j)}(1,…,1) = C(M,j)·C(M−j−1, N−j−1)` for the hook
/// `μ(M,N,j) = (M−N+1, 1^{N−j−1}, 0^j)`.
pub fn hook_schur_ones(m: usize, n: usize, j: usize) -> Result<BigUint> {
    if n == 0 || j >= n || n > m {
        return Err(Error::Domain(format!(
            "hook Schur value needs 0 <= j <= N-1 <= M-1, got M={m}, N={n}, j={j}"
        )));
    }
    Ok(choose(m, j) * choose(m - j - 1, n - j - 1))
}

/// `Σ_{j<N} C(M,j)² C(M−j−1, N−j−1)² ρ^{M−j} / c_j` with `N = c.len()`.
pub fn critical_value(c: &[Rational], m: usize, rho: &Rational) -> Result<Rational> {
    let n = c.len();
    if n == 0 {
        return Err(Error::Domain("critical value needs at least one coefficient".into()));
    }
    if let Some((j, cj)) = c.iter().enumerate().find(|(_, cj)| **cj <= Rational::zero()) {
        return Err(Error::Domain(format!("coefficient c_{j} = {cj} is not positive")));
    }
    if *rho <= Rational::zero() {
        return Err(Error::Domain(format!("rho = {rho} is not positive")));
    }
    if m < n {
        return Err(Error::Domain(format!("degree M = {m} is below N = {n}")));
    }
    let mut total = Rational::zero();
    for (j, cj) in c.iter().enumerate() {
        let h = Rational::from_integer(hook_schur_ones(m, n, j)?.into());
        total += &h * &h * num::traits::pow(rho.clone(), m - j) / cj;
    }
    Ok(total)
}

fn ensure_distinct_positive(xs: &[f64]) -> Result<()> {
    if let Some(x) = xs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Precondition(format!("point {x} is not a positive number")));
    }
    for (i, a) in xs.iter().enumerate() {
        if xs[..i].contains(a) {
            return Err(Error::Precondition(format!("point {a} repeats")));
        }
    }
    Ok(())
}

/// `((1 + x_i x_j)^α)`.
pub fn jain_matrix(xs: &[f64], alpha: f64) -> Result<Matrix<f64>> {
    ensure_distinct_positive(xs)?;
    let n = xs.len();
    Ok(Matrix::from_fn(n, n, |i, j| (1.0 + xs[i] * xs[j]).powf(alpha)))
}

/// Float PSD certificate for the Jain matrix, if it fails.
pub fn jain_certificate(xs: &[f64], alpha: f64, tol: f64) -> Result<Option<PsdCertificate>> {
    f64::psd_certificate(&jain_matrix(xs, alpha)?, tol)
}

pub fn jain_psd(xs: &[f64], alpha: f64, tol: f64) -> Result<bool> {
    Ok(jain_certificate(xs, alpha, tol)?.is_none())
}

/// `count` seeded draws of `n` distinct sorted points in `(0,1)`.
pub fn jain_draws(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            if xs.len() == n {
                break xs;
            }
        })
        .collect()
}

/// `u(ε) = (1−ε, (1−ε)², …, (1−ε)^N)`.
pub fn u_vector(eps: &Rational, n: usize) -> Vec<Rational> {
    let base = Rational::one() - eps;
    let mut out = Vec::with_capacity(n);
    let mut p = base.clone();
    for _ in 0..n {
        out.push(p.clone());
        p *= &base;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdSide {
    /// `bⁿ ρ u(b) u(b)ᵀ`.
    Inner,
    /// `ρ u(bⁿ) u(bⁿ)ᵀ`.
    Outer,
}

/// Rank-one Hankel matrices approaching the zero matrix (inner) and the
/// constant matrix `ρ·1` (outer) as `n` grows.
pub fn threshold_family(
    b: &Rational,
    n: u32,
    size: usize,
    rho: &Rational,
    which: ThresholdSide,
) -> Result<Matrix<Rational>> {
    if *b <= Rational::zero() || *b >= Rational::one() {
        return Err(Error::Precondition(format!("b = {b} must lie in (0,1)")));
    }
    let bn = num::traits::pow(b.clone(), n as usize);
    let (u, scale) = match which {
        ThresholdSide::Inner => (u_vector(b, size), &bn * rho),
        ThresholdSide::Outer => (u_vector(&bn, size), rho.clone()),
    };
    Ok(Matrix::outer(&u, &u).scale(&scale))
}

/// `x = a + t`, `y = a + t·u₀^{k(N−1)}` with the smallest admissible `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoAtomSplit {
    #[serde(with = "rational_serde")]
    pub a: Rational,
    #[serde(with = "rational_serde")]
    pub t: Rational,
    pub k: u32,
}

pub fn lprelim_solve(x: &Rational, y: &Rational, u0: &Rational, n: usize) -> Result<TwoAtomSplit> {
    if !(x > y && *y > Rational::zero()) {
        return Err(Error::Precondition(format!("need x > y > 0, got x = {x}, y = {y}")));
    }
    if *u0 <= Rational::zero() || *u0 >= Rational::one() {
        return Err(Error::Precondition(format!("u0 = {u0} must lie in (0,1)")));
    }
    if n < 2 {
        return Err(Error::Precondition("N must be at least 2".into()));
    }
    let ratio = y / x;
    let step = num::traits::pow(u0.clone(), n - 1);
    let mut k = 1u32;
    let mut q = step.clone();
    while q >= ratio {
        k += 1;
        q *= &step;
    }
    let a = (y - x * &q) / (Rational::one() - &q);
    let t = x - &a;
    if a <= Rational::zero() || t <= Rational::zero() || &a + &t != *x || &a + &t * &q != *y {
        return Err(Error::InvariantViolation(format!("split a = {a}, t = {t} fails verification")));
    }
    Ok(TwoAtomSplit { a, t, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::is_rank_one_hankel;
    use crate::scalar::{q, qi};

    #[test]
    fn critical_value_examples() {
        assert_eq!(critical_value(&[qi(1), qi(1)], 2, &qi(1)).unwrap(), qi(5));
        assert_eq!(critical_value(&[qi(1)], 1, &qi(1)).unwrap(), qi(1));
        assert_eq!(critical_value(&[qi(1), qi(1)], 3, &qi(1)).unwrap(), qi(13));
        assert!(matches!(critical_value(&[qi(1), qi(0)], 2, &qi(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn critical_value_scales_termwise() {
        let c = [q(1, 2), qi(3), q(2, 7)];
        let (m, rho) = (5usize, q(3, 4));
        let two_rho = &rho * qi(2);
        let expected: Rational = (0..3)
            .map(|j| {
                let h = Rational::from_integer(hook_schur_ones(m, 3, j).unwrap().into());
                &h * &h * num::traits::pow(two_rho.clone(), m - j) / &c[j]
            })
            .sum();
        assert_eq!(critical_value(&c, m, &two_rho).unwrap(), expected);
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_schur_ones(3, 2, 0).unwrap(), BigUint::from(2u32));
        assert_eq!(hook_schur_ones(2, 2, 1).unwrap(), BigUint::from(2u32));
        assert!(hook_schur_ones(2, 3, 0).is_err());
        assert!(hook_schur_ones(3, 2, 2).is_err());
        let sum: BigUint = (0..2).map(|j| hook_schur_ones(2, 2, j).unwrap().pow(2)).sum();
        assert_eq!(Rational::from_integer(sum.into()), critical_value(&[qi(1), qi(1)], 2, &qi(1)).unwrap());
    }

    #[test]
    fn jain_examples() {
        let xs = [0.25, 0.5, 0.75];
        assert!(jain_psd(&xs, 2.0, 1e-10).unwrap());
        assert!(jain_psd(&xs, 1.5, 1e-10).unwrap());
        match jain_certificate(&xs, 0.5, 1e-10).unwrap() {
            Some(PsdCertificate::NegativeEigenvalue { value, .. }) => assert!(value < -1e-8),
            other => panic!("expected an eigenvalue certificate, got {other:?}"),
        }
        assert!(matches!(jain_matrix(&[0.5, 0.5], 1.0), Err(Error::Precondition(_))));
        let draws = jain_draws(3, 5, 1);
        assert_eq!(draws, jain_draws(3, 5, 1));
        assert!(draws.iter().all(|xs| xs.len() == 3 && xs.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn threshold_family_examples() {
        assert_eq!(u_vector(&q(1, 2), 2), vec![q(1, 2), q(1, 4)]);
        let outer = threshold_family(&q(1, 2), 1, 2, &qi(1), ThresholdSide::Outer).unwrap();
        assert_eq!(outer.to_rows(), vec![vec![q(1, 4), q(1, 8)], vec![q(1, 8), q(1, 16)]]);
        let inner0 = threshold_family(&q(1, 3), 0, 3, &qi(2), ThresholdSide::Inner).unwrap();
        let u = u_vector(&q(1, 3), 3);
        assert_eq!(inner0, Matrix::outer(&u, &u).scale(&qi(2)));
        assert!(is_rank_one_hankel(&u_vector(&q(2, 7), 5)));
        assert!(outer.is_hankel() && inner0.is_hankel());
    }

    #[test]
    fn two_atom_split() {
        let s = lprelim_solve(&qi(2), &qi(1), &q(1, 2), 2).unwrap();
        assert_eq!(s, TwoAtomSplit { a: q(2, 3), t: q(4, 3), k: 2 });
        let close = lprelim_solve(&qi(1), &q(999, 1000), &q(1, 2), 3).unwrap();
        assert!(close.k >= 1);
        assert!(lprelim_solve(&qi(1), &qi(1), &q(1, 2), 2).is_err());
    }
}
