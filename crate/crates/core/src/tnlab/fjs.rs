//! The almost-Hankel matrix `M`, the family `A(x) = 1 + xM`, and the
//! determinant expansions showing Hadamard powers of `A(x)` leave TN.

use std::collections::BTreeMap;

use num::traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmat::{det_exact, det_float, det_series, entrywise_poly, hadamard_pow, Matrix, UniPoly};
use crate::scalar::{parse_rational, qi, Rational, Scalar};

/// Leading coefficient of `det f[xM]` at `x⁴`, per unit of `α₀·α₁²·α₂`.
pub const QUARTIC_CONSTANT: i64 = -57168;

/// Verdict threshold for negative floating determinants.
pub const NEGATIVE_DET_THRESHOLD: f64 = -1e-12;

const FJS: [[i64; 4]; 4] = [[3, 6, 14, 36], [6, 14, 36, 98], [14, 36, 98, 276], [36, 98, 284, 842]];

/// TN, rank 3, and Hankel except for the `(3,2)` entry.
pub fn fjs_m() -> Matrix<Rational> {
    Matrix::from_fn(4, 4, |i, j| qi(FJS[i][j]))
}

/// `1_{4×4} + x·M`, intended for `x ≥ 0`.
pub fn a_of_x(x: &Rational) -> Matrix<Rational> {
    fjs_m().map(|m| Rational::one() + x * m)
}

/// `(computed, predicted)` coefficients of `x⁴` in `det f[xM]` for
/// `f(x) = Σ_{j≤4} α_j x^j`.
pub fn quartic_coeff_identity(alpha: &[Rational; 5]) -> Result<(Rational, Rational)> {
    let f = UniPoly::new(alpha.to_vec());
    let det = det_series(&entrywise_poly(&f, &fjs_m()), 4)?;
    let predicted = qi(QUARTIC_CONSTANT) * &alpha[0] * &alpha[1] * &alpha[1] * &alpha[2];
    Ok((det.coeff(4), predicted))
}

fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        if seen.contains(&first) {
            continue;
        }
        seen.push(first);
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in distinct_permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// `det(m₁^{∘i₁} | m₂^{∘i₂} | m₃^{∘i₃} | m₄^{∘i₄})` for every permutation of `(2,1,1,0)`,
/// where `m_l` are the columns of `M`.
pub fn appendix_table() -> BTreeMap<[usize; 4], Rational> {
    let m = fjs_m();
    distinct_permutations(&[2, 1, 1, 0])
        .into_iter()
        .map(|p| {
            let cols = Matrix::from_fn(4, 4, |i, j| m[(i, j)].pow_u(p[j] as u32));
            let key = [p[0], p[1], p[2], p[3]];
            (key, det_exact(&cols).expect("square"))
        })
        .collect()
}

/// `det A(x)^{∘α}`: exact for integer `α`, partial-pivoted LU otherwise.
pub fn power_det(alpha: f64, x: f64) -> Result<f64> {
    let xq = parse_rational(&format!("{x:e}"))?;
    let a = a_of_x(&xq);
    if alpha.fract() == 0.0 && alpha.abs() <= 64.0 {
        Ok(det_exact(&hadamard_pow(&a, alpha)?)?.to_f64())
    } else {
        det_float(&hadamard_pow(&a.to_f64(), alpha)?)
    }
}

/// Smallest grid point `x` with `det A(x)^{∘α} < −1e−12`, if any.
pub fn find_negative_power_det(alpha: f64, grid: &[f64]) -> Result<Option<f64>> {
    if let Some(x) = grid.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Precondition(format!("grid point {x} is not positive")));
    }
    let hits = grid
        .par_iter()
        .map(|&x| Ok((x, power_det(alpha, x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(hits
        .into_iter()
        .filter(|(_, d)| *d < NEGATIVE_DET_THRESHOLD)
        .map(|(x, _)| x)
        .min_by(f64::total_cmp))
}

/// `10^{-k}` for `k = 1..=8`.
pub fn default_delta_grid() -> Vec<f64> {
    (1..=8).map(|k| 10f64.powi(-k)).collect()
}

/// `{1, 2, 5}·10^{-k}` for `k = 1..=8`, ascending.
pub fn fine_delta_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=8)
        .flat_map(|k| [1.0, 2.0, 5.0].map(|m| format!("{m}e-{k}").parse::<f64>().unwrap()))
        .collect();
    g.sort_by(f64::total_cmp);
    g
}

/// Seeded α-vectors for the quartic identity: numerators in `[−20, 20]`,
/// denominators in `[1, 9]`.
pub fn quartic_samples(seed: u64, count: usize) -> Vec<[Rational; 5]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| Rational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=9).into())))
        .collect()
}

/// Coefficient of `x^{N−1}` in `det f[xA]`, predicted as `f(0)·f′(0)^{N−1}·(1ᵀ adj(A) 1)`.
pub fn linear_term_prediction(f: &UniPoly, a: &Matrix<Rational>) -> Result<Rational> {
    let n = a.rows();
    let adj = crate::exactmat::adjugate(a)?;
    let f1 = f.coeff(1);
    let mut p = f.coeff(0);
    for _ in 1..n {
        p *= &f1;
    }
    Ok(p * adj.entry_sum())
}
