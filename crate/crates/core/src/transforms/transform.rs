//! Entrywise transforms: construction, JSON form and evaluation.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::facewise::FacewiseMap;
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, UniPoly};
use crate::moments::MomentSeq;
use crate::scalar::{format_rational, parse_rational, rational_serde, rational_vec_serde, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum Transform {
    /// `Σ c_j x^j`.
    Poly {
        #[serde(with = "rational_vec_serde")]
        coeffs: Vec<Rational>,
    },
    /// `x^α`, with `0^α = 0` for `α > 0` and `0^0 = 1`.
    Power {
        #[serde(serialize_with = "ser_alpha", deserialize_with = "de_alpha")]
        alpha: f64,
    },
    /// `Σ_{j<N} c_j x^j + c′ x^M`.
    PolyPlusPower {
        #[serde(with = "rational_vec_serde")]
        coeffs: Vec<Rational>,
        #[serde(with = "rational_serde")]
        c_prime: Rational,
        m: u32,
    },
    /// `F̃(x)` for `x > 0`, `0` at `0`, `−F̃(−x)` for `x < 0`.
    OddExt { base: Box<Transform> },
    /// `F̃(x)` for `x > 0`, `f0` at `0`, `F̃(−x)` for `x < 0`.
    EvenExt {
        base: Box<Transform>,
        #[serde(with = "rational_serde")]
        f0: Rational,
    },
    /// `base` on `[−ρ, ρ]` with optional overrides at `0` and `±ρ`.
    Jump {
        base: Box<Transform>,
        #[serde(with = "rational_serde")]
        rho: Rational,
        #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
        value_at_0: Option<Rational>,
        #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
        value_at_rho: Option<Rational>,
        #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
        value_at_neg_rho: Option<Rational>,
    },
    /// Values at finitely many points only.
    Tabulated { points: Vec<TabPoint> },
    /// Facewise map; evaluates as a scalar function only when `m = 1`.
    Facewise(FacewiseMap),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabPoint {
    #[serde(with = "rational_serde")]
    pub x: Rational,
    #[serde(with = "rational_serde")]
    pub y: Rational,
}

fn ser_alpha<S: Serializer>(alpha: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(*alpha)
}

fn de_alpha<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    use serde::de::Error as _;
    match serde_json::Value::deserialize(d)? {
        serde_json::Value::Number(n) => n.as_f64().ok_or_else(|| D::Error::custom("bad exponent")),
        serde_json::Value::String(s) => {
            parse_rational(&s).map(|q| q.to_f64()).map_err(D::Error::custom)
        }
        other => Err(D::Error::custom(format!("expected exponent, found {other}"))),
    }
}

mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Null => Ok(None),
            v => rational_serde::from_value(&v).map(Some).map_err(D::Error::custom),
        }
    }
}

impl Transform {
    pub fn poly(coeffs: Vec<Rational>) -> Self {
        Transform::Poly { coeffs }
    }

    pub fn identity() -> Self {
        Transform::poly(vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())])
    }

    pub fn power(alpha: f64) -> Self {
        Transform::Power { alpha }
    }

    pub fn odd_ext(base: Transform) -> Self {
        Transform::OddExt { base: Box::new(base) }
    }

    pub fn even_ext(base: Transform, f0: Rational) -> Self {
        Transform::EvenExt { base: Box::new(base), f0 }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let t: Transform = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Transform::Poly { .. } => "poly",
            Transform::Power { .. } => "power",
            Transform::PolyPlusPower { .. } => "poly_plus_power",
            Transform::OddExt { .. } => "odd_ext",
            Transform::EvenExt { .. } => "even_ext",
            Transform::Jump { .. } => "jump",
            Transform::Tabulated { .. } => "tabulated",
            Transform::Facewise(_) => "facewise",
        }
    }

    /// Structural checks not expressible in the JSON schema.
    pub fn validate(&self) -> Result<()> {
        match self {
            Transform::Power { alpha } if !alpha.is_finite() => {
                Err(Error::Config(format!("power exponent {alpha} is not finite")))
            }
            Transform::OddExt { base } | Transform::EvenExt { base, .. } => match **base {
                Transform::Poly { .. } => Ok(()),
                _ => Err(Error::Config("odd/even extensions take a poly base".into())),
            },
            Transform::Jump { base, rho, .. } => {
                if *rho <= Rational::from_integer(0.into()) {
                    return Err(Error::Config("jump radius rho must be positive".into()));
                }
                base.validate()
            }
            Transform::Facewise(f) => f.validate(),
            _ => Ok(()),
        }
    }

    /// The polynomial when the transform is one (`Poly`, or `PolyPlusPower` expanded).
    pub fn as_poly(&self) -> Option<UniPoly> {
        match self {
            Transform::Poly { coeffs } => Some(UniPoly::new(coeffs.clone())),
            Transform::PolyPlusPower { coeffs, c_prime, m } => {
                Some(UniPoly::new(coeffs.clone()) + UniPoly::monomial(c_prime.clone(), *m as usize))
            }
            _ => None,
        }
    }

    /// `F(x)`; domain violations are domain errors.
    pub fn eval<T: Scalar>(&self, x: &T) -> Result<T> {
        match self {
            Transform::Poly { coeffs } => Ok(horner(coeffs, x)),
            Transform::Power { alpha } => x.powf(*alpha),
            Transform::PolyPlusPower { coeffs, c_prime, m } => {
                Ok(horner(coeffs, x) + T::from_rational(c_prime) * x.pow_u(*m))
            }
            Transform::OddExt { base } => {
                if *x > T::zero() {
                    base.eval(x)
                } else if x.is_zero() {
                    Ok(T::zero())
                } else {
                    Ok(-base.eval(&-x.clone())?)
                }
            }
            Transform::EvenExt { base, f0 } => {
                if x.is_zero() {
                    Ok(T::from_rational(f0))
                } else {
                    base.eval(&x.abs())
                }
            }
            Transform::Jump { base, rho, value_at_0, value_at_rho, value_at_neg_rho } => {
                let r = T::from_rational(rho);
                if x.abs() > r {
                    return Err(Error::Domain(format!("{x} lies outside [-{rho}, {rho}]")));
                }
                let overridden = if x.is_zero() {
                    value_at_0
                } else if *x == r {
                    value_at_rho
                } else if *x == -r {
                    value_at_neg_rho
                } else {
                    &None
                };
                match overridden {
                    Some(v) => Ok(T::from_rational(v)),
                    None => base.eval(x),
                }
            }
            Transform::Tabulated { points } => {
                let hit = points.iter().find(|p| T::from_rational(&p.x).approx_eq(x));
                hit.map(|p| T::from_rational(&p.y))
                    .ok_or_else(|| Error::Domain(format!("{x} is not a tabulated point")))
            }
            Transform::Facewise(f) => {
                if f.m() != 1 {
                    return Err(Error::Domain(format!(
                        "facewise map with m = {} needs {}-tuples",
                        f.m(),
                        f.m()
                    )));
                }
                f.eval(std::slice::from_ref(x))
            }
        }
    }

    /// Entrywise application to a matrix; errors name the offending entry.
    pub fn apply<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        a.try_map(|v| self.eval(v))
    }

    pub fn apply_seq<T: Scalar>(&self, s: &MomentSeq<T>) -> Result<MomentSeq<T>> {
        s.try_map(|v| self.eval(v))
    }

    /// Non-negative Taylor coefficients (the sufficient absolute-monotonicity certificate).
    pub fn has_nonnegative_coeffs(&self) -> bool {
        match self {
            Transform::Poly { coeffs } => coeffs.iter().all(|c| *c >= Rational::from_integer(0.into())),
            _ => false,
        }
    }
}

fn horner<T: Scalar>(coeffs: &[Rational], x: &T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + T::from_rational(c))
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}
