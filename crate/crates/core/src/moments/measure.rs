//! Finitely supported non-negative measures in one or more dimensions.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_serde, Mode, Rational, Scalar};

const FLOAT_MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T> {
    pub x: Vec<T>,
    pub w: T,
}

/// Non-negative measure with finitely many distinct atoms of positive weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure<T> {
    dim: usize,
    atoms: Vec<Atom<T>>,
}

fn same_point<T: Scalar>(a: &[T], b: &[T]) -> bool {
    match T::MODE {
        Mode::Exact => a == b,
        Mode::Float => a.iter().zip(b).all(|(p, q)| (p.clone() - q.clone()).abs().to_f64() <= FLOAT_MERGE_TOL),
    }
}

impl<T: Scalar> Measure<T> {
    /// Validates weights, merges coincident atoms and drops zero-weight atoms.
    pub fn new(dim: usize, atoms: Vec<Atom<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("measure dimension must be at least 1".into()));
        }
        let mut merged: Vec<Atom<T>> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if atom.x.len() != dim {
                return Err(Error::Dimension(format!(
                    "atom has {} coordinates, measure dimension is {dim}",
                    atom.x.len()
                )));
            }
            if atom.w < T::zero() {
                return Err(Error::Validity(format!("negative weight {}", atom.w)));
            }
            if atom.x.iter().chain(std::iter::once(&atom.w)).any(|v| !v.to_f64().is_finite()) {
                return Err(Error::Validity("non-finite atom or weight".into()));
            }
            match merged.iter_mut().find(|m| same_point(&m.x, &atom.x)) {
                Some(m) => m.w = m.w.clone() + atom.w,
                None => merged.push(atom),
            }
        }
        merged.retain(|a| !a.w.is_zero());
        Ok(Self { dim, atoms: merged })
    }

    /// One-dimensional measure from `(position, weight)` pairs.
    pub fn from_points(points: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        Self::new(1, points.into_iter().map(|(x, w)| Atom { x: vec![x], w }).collect())
    }

    /// `w·δ_x` on the line.
    pub fn point_mass(x: T, w: T) -> Result<Self> {
        Self::from_points([(x, w)])
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, atoms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass(&self) -> T {
        self.atoms.iter().fold(T::zero(), |acc, a| acc + a.w.clone())
    }

    /// Positions of a one-dimensional measure.
    pub fn support(&self) -> Vec<T> {
        self.atoms.iter().map(|a| a.x[0].clone()).collect()
    }

    /// `c·μ` for `c ≥ 0`.
    pub fn scale(&self, c: &T) -> Result<Self> {
        Self::new(
            self.dim,
            self.atoms.iter().map(|a| Atom { x: a.x.clone(), w: a.w.clone() * c.clone() }).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("cannot add measures of different dimension".into()));
        }
        Self::new(self.dim, self.atoms.iter().chain(&other.atoms).cloned().collect())
    }

    /// Push-forward under `x ↦ −x`.
    pub fn reflect(&self) -> Self {
        Self {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { x: a.x.iter().map(|v| -v.clone()).collect(), w: a.w.clone() })
                .collect(),
        }
    }

    /// Product measure `μ ⊗ ν` on the concatenated coordinates.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut atoms = Vec::with_capacity(self.len() * other.len());
        for a in &self.atoms {
            for b in &other.atoms {
                let mut x = a.x.clone();
                x.extend(b.x.iter().cloned());
                atoms.push(Atom { x, w: a.w.clone() * b.w.clone() });
            }
        }
        Self::new(self.dim + other.dim, atoms)
    }

    /// True when every coordinate of every atom lies in `[lo, hi]`.
    pub fn supported_in(&self, lo: &T, hi: &T) -> bool {
        self.atoms.iter().all(|a| a.x.iter().all(|v| v >= lo && v <= hi))
    }

    pub fn to_f64(&self) -> Measure<f64> {
        Measure {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { x: a.x.iter().map(Scalar::to_f64).collect(), w: a.w.to_f64() })
                .collect(),
        }
    }
}

impl Serialize for Measure<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms: Vec<Value> = self
            .atoms
            .iter()
            .map(|a| {
                let x = if self.dim == 1 {
                    Value::String(format_rational(&a.x[0]))
                } else {
                    Value::Array(a.x.iter().map(|v| Value::String(format_rational(v))).collect())
                };
                serde_json::json!({ "x": x, "w": format_rational(&a.w) })
            })
            .collect();
        serde_json::json!({ "dim": self.dim, "atoms": atoms }).serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    x: Value,
    w: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    dim: usize,
    atoms: Vec<RawAtom>,
}

impl<'de> Deserialize<'de> for Measure<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMeasure::deserialize(d)?;
        let parse = || -> Result<Self> {
            let atoms = raw
                .atoms
                .iter()
                .map(|a| {
                    let x = match &a.x {
                        Value::Array(vs) => vs.iter().map(rational_serde::from_value).collect::<Result<_>>()?,
                        v => vec![rational_serde::from_value(v)?],
                    };
                    Ok(Atom { x, w: rational_serde::from_value(&a.w)? })
                })
                .collect::<Result<Vec<_>>>()?;
            Measure::new(raw.dim, atoms)
        };
        parse().map_err(D::Error::custom)
    }
}
