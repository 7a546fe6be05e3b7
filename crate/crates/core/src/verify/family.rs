//! Seeded generators for the test families.

use std::fmt;
use std::str::FromStr;

use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmat::{AnyMatrix, Matrix};
use crate::moments::{hankel_from, moments_of, Measure, SupportSet};
use crate::scalar::{rational_serde, Rational};
use crate::transforms::h_a;

/// Largest denominator drawn by the generators.
pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `aδ₁ + bδ_{u₀}`, whose Hankel matrices are `a·1 + b·u uᵀ`.
    TwoPointOneU0,
    /// `aδ₋₁ + bδ_u + cδ₁` with `u ∈ (−1,1)`.
    ThreePoint,
    MeasuresUnit,
    MeasuresSymmetric,
    MeasuresNegUnit,
    /// `aδ₋₁ + bδ_{−u₀}`.
    TwoPointNeg,
    /// `aδ₀ + bδ₁`.
    ZeroOne,
    /// `aδ₁ + bδ_x` with `x ∈ (0,1)` and total mass below `ρ`.
    BoundedMass,
    /// The matrices `H_{a/(i+1)}`.
    HaBoundary,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::TwoPointOneU0,
        Family::ThreePoint,
        Family::MeasuresUnit,
        Family::MeasuresSymmetric,
        Family::MeasuresNegUnit,
        Family::TwoPointNeg,
        Family::ZeroOne,
        Family::BoundedMass,
        Family::HaBoundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TwoPointOneU0 => "two_point_{1,u0}",
            Family::ThreePoint => "three_point_{-1,u,1}",
            Family::MeasuresUnit => "measures_on_[0,1]",
            Family::MeasuresSymmetric => "measures_on_[-1,1]",
            Family::MeasuresNegUnit => "measures_on_[-1,0]",
            Family::TwoPointNeg => "two_point_{-1,-u0}",
            Family::ZeroOne => "zero_one",
            Family::BoundedMass => "bounded_mass_{1,x}",
            Family::HaBoundary => "H_a_boundary",
        }
    }

    /// Where the image of a preserver is checked.
    pub fn target(self) -> Target {
        match self {
            Family::ThreePoint | Family::MeasuresSymmetric => Target::Support(SupportSet::Symmetric),
            Family::MeasuresNegUnit | Family::TwoPointNeg => Target::NegUnit,
            Family::HaBoundary => Target::Psd,
            _ => Target::Support(SupportSet::Unit),
        }
    }

    /// Checks the defining constraints of the family.
    pub fn validate(self, inst: &Instance, params: &FamilyParams) -> Result<()> {
        let bad = |why: &str| Err(Error::InvariantViolation(format!("{} instance {why}", self.name())));
        let (neg1, zero, one) = (-Rational::one(), Rational::zero(), Rational::one());
        let mu = match (self, inst) {
            (Family::HaBoundary, Instance::Matrix(m)) => {
                let a = m.as_rational()?;
                let s = a[(0, 0)].clone();
                return if s > zero && *a == h_a(&s) { Ok(()) } else { bad("is not H_a with a > 0") };
            }
            (Family::HaBoundary, _) => return bad("is not a matrix"),
            (_, Instance::Matrix(_)) => return bad("is not a measure"),
            (_, Instance::Measure(mu)) => mu,
        };
        if mu.dim() != 1 || mu.is_empty() {
            return bad("must be a non-zero measure on the line");
        }
        if mu.atoms().iter().any(|a| a.w <= zero) {
            return bad("has a non-positive weight");
        }
        let pts = mu.support();
        let within = |allowed: &[Rational]| pts.iter().all(|p| allowed.contains(p));
        let ok = match self {
            Family::TwoPointOneU0 => within(&[one.clone(), params.u0.clone()]),
            Family::ThreePoint => {
                mu.supported_in(&neg1, &one)
                    && pts.iter().filter(|p| **p != neg1 && **p != one).count() <= 1
            }
            Family::MeasuresUnit => mu.supported_in(&zero, &one),
            Family::MeasuresSymmetric => mu.supported_in(&neg1, &one),
            Family::MeasuresNegUnit => mu.supported_in(&neg1, &zero),
            Family::TwoPointNeg => within(&[neg1.clone(), -params.u0.clone()]),
            Family::ZeroOne => within(&[zero.clone(), one.clone()]),
            Family::BoundedMass => {
                mu.supported_in(&zero, &one) && !pts.contains(&zero) && pts.len() <= 2 && mu.mass() < params.rho
            }
            Family::HaBoundary => unreachable!(),
        };
        if ok {
            Ok(())
        } else {
            bad("violates the family's support or mass constraint")
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('−', "-");
        let short = match key.as_str() {
            "three_point" => Some(Family::ThreePoint),
            "two_point" => Some(Family::TwoPointOneU0),
            _ => None,
        };
        short
            .or_else(|| Family::ALL.into_iter().find(|f| f.name() == key))
            .ok_or_else(|| {
                let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Config(format!("unknown family {s:?}; known: {}", known.join(", ")))
            })
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// How the transformed instance is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Truncated support criteria for `K`.
    Support(SupportSet),
    /// Support in `[−1,0]`: the criteria for `[0,1]` after `s_k ↦ (−1)^k s_k`.
    NegUnit,
    /// Plain PSD of the transformed matrix.
    Psd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(with = "rational_serde")]
    pub u0: Rational,
    /// Base parameter of `H_a_boundary`.
    #[serde(with = "rational_serde")]
    pub a: Rational,
    /// Mass bound of `bounded_mass_{1,x}`.
    #[serde(with = "rational_serde")]
    pub rho: Rational,
    /// Atom count cap for the `measures_on_*` families.
    pub max_atoms: usize,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            u0: Rational::new(1.into(), 2.into()),
            a: Rational::new(1.into(), 4.into()),
            rho: Rational::one(),
            max_atoms: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Instance {
    Measure(Measure<Rational>),
    Matrix(AnyMatrix),
}

impl Instance {
    /// The `n × n` matrix the preserver acts on: the Hankel matrix of a
    /// measure, or the leading block of a matrix.
    pub fn matrix(&self, n: usize) -> Result<Matrix<Rational>> {
        match self {
            Instance::Measure(mu) => hankel_from(&moments_of(mu, 2 * n - 2)?, n),
            Instance::Matrix(m) => {
                let a = m.as_rational()?;
                if n > a.rows() {
                    return Err(Error::Dimension(format!("instance is {}x{}, asked for {n}", a.rows(), a.cols())));
                }
                let idx: Vec<usize> = (0..n).collect();
                a.select(&idx, &idx)
            }
        }
    }

    pub fn size_hint(&self) -> Option<usize> {
        match self {
            Instance::Measure(_) => None,
            Instance::Matrix(m) => Some(m.as_rational().map(|a| a.rows()).unwrap_or(0)),
        }
    }
}

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// In `(0,1)`.
fn draw_open_unit(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=MAX_DENOMINATOR);
    rational(rng.gen_range(1..den), den)
}

/// In `[0,1]`.
fn draw_closed_unit(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    rational(rng.gen_range(0..=den), den)
}

/// In `(0,2]`.
fn draw_weight(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    rational(rng.gen_range(1..=2 * den), den)
}

fn measure(points: Vec<(Rational, Rational)>) -> Result<Instance> {
    Ok(Instance::Measure(Measure::from_points(points)?))
}

fn random_atoms(rng: &mut ChaCha8Rng, max_atoms: usize, place: impl Fn(Rational) -> Rational) -> Result<Instance> {
    let count = rng.gen_range(1..=max_atoms.max(1));
    let pts = (0..count).map(|_| (place(draw_closed_unit(rng)), draw_weight(rng))).collect();
    measure(pts)
}

fn draw(family: Family, params: &FamilyParams, rng: &mut ChaCha8Rng, i: usize) -> Result<Instance> {
    let one = Rational::one();
    match family {
        Family::TwoPointOneU0 => measure(vec![(one, draw_weight(rng)), (params.u0.clone(), draw_weight(rng))]),
        Family::ThreePoint => {
            let u = draw_open_unit(rng) * Rational::from_integer(2.into()) - &one;
            measure(vec![(-one.clone(), draw_weight(rng)), (u, draw_weight(rng)), (one, draw_weight(rng))])
        }
        Family::MeasuresUnit => random_atoms(rng, params.max_atoms, |x| x),
        Family::MeasuresSymmetric => {
            random_atoms(rng, params.max_atoms, |x| x * Rational::from_integer(2.into()) - Rational::one())
        }
        Family::MeasuresNegUnit => random_atoms(rng, params.max_atoms, |x| -x),
        Family::TwoPointNeg => {
            measure(vec![(-one, draw_weight(rng)), (-params.u0.clone(), draw_weight(rng))])
        }
        Family::ZeroOne => measure(vec![(Rational::zero(), draw_weight(rng)), (one, draw_weight(rng))]),
        Family::BoundedMass => {
            let half = &params.rho / Rational::from_integer(2.into());
            let a = draw_open_unit(rng) * &half;
            let b = draw_open_unit(rng) * &half;
            measure(vec![(one, a), (draw_open_unit(rng), b)])
        }
        Family::HaBoundary => {
            let a = &params.a / Rational::from_integer((i as i64 + 1).into());
            Ok(Instance::Matrix(h_a(&a).into()))
        }
    }
}

fn check_params(family: Family, params: &FamilyParams) -> Result<()> {
    let (zero, one) = (Rational::zero(), Rational::one());
    match family {
        Family::TwoPointOneU0 | Family::TwoPointNeg if params.u0 <= zero || params.u0 >= one => {
            Err(Error::Config(format!("u0 = {} must lie in (0,1)", params.u0)))
        }
        Family::BoundedMass if params.rho <= zero => Err(Error::Config(format!("rho = {} must be positive", params.rho))),
        Family::HaBoundary if params.a <= zero => Err(Error::Config(format!("a = {} must be positive", params.a))),
        _ => Ok(()),
    }
}

/// `count` instances of `family`, deterministic in `(params, seed)`.
/// Every instance is checked against the family's constraints before it is returned.
pub fn gen_family(family: Family, params: &FamilyParams, seed: u64, count: usize) -> Result<Vec<Instance>> {
    check_params(family, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let inst = draw(family, params, &mut rng, i)?;
            family.validate(&inst, params)?;
            Ok(inst)
        })
        .collect()
}
