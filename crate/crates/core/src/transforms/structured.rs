//! Odd extensions on `[−1,0]` and boundary jumps on `[−ρ,ρ]`.

use num::traits::{One, Zero};

use super::transform::Transform;
use crate::error::{Error, Result};
use crate::exactmat::{hadamard, Matrix};
use crate::moments::{hankel_from, moments_of, Measure};
use crate::scalar::{Rational, Scalar};

/// `H_{δ_{−1}}`: the checkerboard matrix `((−1)^{i+j})`.
pub fn checkerboard_signs(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| if (i + j) % 2 == 0 { Rational::one() } else { -Rational::one() })
}

/// Checks `F[H_μ] = H_{δ₋₁} ∘ F̃[H_{δ₋₁} ∘ H_μ]` exactly for `F = OddExt(F̃)`, or
/// `F[H_μ] = H_{F(a)δ₀}` when `μ = a·δ₀`.
pub fn odd_composite_identity(base: &Transform, mu: &Measure<Rational>, n: usize) -> Result<bool> {
    if mu.dim() != 1 || !mu.supported_in(&-Rational::one(), &Rational::zero()) {
        return Err(Error::Domain("measure must be supported in [-1,0]".into()));
    }
    let f = Transform::odd_ext(base.clone());
    f.validate()?;
    let h = hankel_from(&moments_of(mu, 2 * n - 2)?, n)?;
    let lhs = f.apply(&h)?;
    if mu.support().iter().all(Zero::is_zero) {
        let corner = Measure::point_mass(Rational::zero(), Rational::one())?;
        let mut rhs = hankel_from(&moments_of(&corner, 2 * n - 2)?, n)?;
        rhs[(0, 0)] = f.eval(&mu.mass())?;
        return Ok(lhs == rhs);
    }
    let signs = checkerboard_signs(n);
    let rhs = hadamard(&signs, &base.apply(&hadamard(&signs, &h)?)?)?;
    Ok(lhs == rhs)
}

/// `H_a = [[a,0,a],[0,a,a],[a,a,2a]]`, PSD of rank two for `a > 0`.
pub fn h_a<T: Scalar>(a: &T) -> Matrix<T> {
    let z = T::zero();
    let two = a.clone() + a.clone();
    Matrix::from_rows(vec![
        vec![a.clone(), z.clone(), a.clone()],
        vec![z, a.clone(), a.clone()],
        vec![a.clone(), a.clone(), two],
    ])
    .expect("3x3")
}

/// `[[ρ,ρ,a],[ρ,ρ,ρ],[a,ρ,ρ]]`, with determinant `−ρ(ρ−a)²`.
pub fn udcc_matrix<T: Scalar>(rho: &T, a: &T) -> Matrix<T> {
    let r = rho.clone();
    Matrix::from_rows(vec![
        vec![r.clone(), r.clone(), a.clone()],
        vec![r.clone(), r.clone(), r.clone()],
        vec![a.clone(), r.clone(), r],
    ])
    .expect("3x3")
}

/// The rank-one matrix `[[a²/ρ,−a,a],[−a,ρ,−ρ],[a,−ρ,ρ]]`, PSD for `0 < a ≤ ρ`.
pub fn boundary_matrix<T: Scalar>(a: &T, rho: &T) -> Matrix<T> {
    let v = [a.clone(), -rho.clone(), rho.clone()];
    Matrix::outer(&v, &v).scale(&(T::one() / rho.clone()))
}

/// Applies a jump-decorated transform entrywise and reports the PSD verdict.
pub fn jump_apply_check<T: Scalar>(t: &Transform, a: &Matrix<T>, tol: f64) -> Result<bool> {
    if !matches!(t, Transform::Jump { .. }) {
        return Err(Error::Config(format!("expected a jump transform, got {}", t.variant_name())));
    }
    let fa = t.apply(a)?;
    Ok(T::psd_certificate(&fa, tol)?.is_none())
}
