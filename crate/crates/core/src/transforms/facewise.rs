//! Facewise maps on the closed orthant `[0,∞)^m`: one polynomial with
//! non-negative coefficients per face `J ⊆ {1..m}`.

use std::collections::BTreeMap;

use num::traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactmat::Matrix;
use crate::scalar::{format_rational, rational_serde, Rational, Scalar};

/// One monomial `c · Π x_i^{e_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub c: Rational,
    pub e: Vec<u32>,
}

/// Polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn new(nvars: usize, terms: Vec<Term>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.e.len() != nvars) {
            return Err(Error::Dimension(format!(
                "term has {} exponents, polynomial has {nvars} variables",
                t.e.len()
            )));
        }
        Ok(Self { nvars, terms })
    }

    /// `Σ c_d x^d` in one variable, or a constant when `coeffs.len() ≤ 1` and `nvars = 0`.
    pub fn univariate(nvars: usize, coeffs: &[Rational]) -> Result<Self> {
        match nvars {
            0 if coeffs.len() <= 1 => {
                let c = coeffs.first().cloned().unwrap_or_else(Rational::zero);
                Self::new(0, vec![Term { c, e: vec![] }])
            }
            0 => Err(Error::Dimension("the empty face takes a single constant".into())),
            1 => Self::new(
                1,
                coeffs.iter().enumerate().map(|(d, c)| Term { c: c.clone(), e: vec![d as u32] }).collect(),
            ),
            _ => Err(Error::Dimension("coefficient lists describe at most one variable".into())),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval<T: Scalar>(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| {
            let mono = x.iter().zip(&t.e).fold(T::from_rational(&t.c), |p, (v, &k)| p * v.pow_u(k));
            acc + mono
        })
    }

    fn coefficient_list(&self) -> Option<Vec<Rational>> {
        if self.nvars > 1 {
            return None;
        }
        let deg = self.terms.iter().map(|t| t.e.first().copied().unwrap_or(0)).max().unwrap_or(0);
        let mut out = vec![Rational::zero(); deg as usize + 1];
        for t in &self.terms {
            out[t.e.first().copied().unwrap_or(0) as usize] += &t.c;
        }
        Some(out)
    }
}

/// `F(x) = g_J(x_J)` where `J = {l : x_l > 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FacewiseMap {
    m: usize,
    g: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Subsets of `0..m` as sorted index vectors, by bitmask order.
pub fn subsets(m: usize) -> Vec<Vec<usize>> {
    (0..1usize << m).map(|mask| (0..m).filter(|l| mask & (1 << l) != 0).collect()).collect()
}

impl FacewiseMap {
    /// `g` maps every face `J` (0-based, sorted) to a polynomial in `|J|` variables.
    pub fn new(m: usize, g: BTreeMap<Vec<usize>, MultiPoly>) -> Result<Self> {
        let f = Self { m, g };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Config("facewise map needs m >= 1".into()));
        }
        for face in subsets(self.m) {
            let Some(p) = self.g.get(&face) else {
                return Err(Error::Config(format!("missing g for face {}", face_key(&face))));
            };
            if p.nvars != face.len() {
                return Err(Error::Config(format!(
                    "g for face {} must have {} variables",
                    face_key(&face),
                    face.len()
                )));
            }
            if p.terms.iter().any(|t| t.c < Rational::zero()) {
                return Err(Error::Validity(format!(
                    "g for face {} has a negative coefficient",
                    face_key(&face)
                )));
            }
        }
        if self.g.len() != 1 << self.m {
            return Err(Error::Config("facewise map has faces outside {1..m}".into()));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn g(&self, face: &[usize]) -> &MultiPoly {
        &self.g[face]
    }

    /// Face of `x` and `g_J` at its positive coordinates.
    pub fn eval<T: Scalar>(&self, x: &[T]) -> Result<T> {
        if x.len() != self.m {
            return Err(Error::Dimension(format!("expected {} coordinates, got {}", self.m, x.len())));
        }
        if let Some(v) = x.iter().find(|v| **v < T::zero()) {
            return Err(Error::Domain(format!("coordinate {v} is negative")));
        }
        let face: Vec<usize> = (0..self.m).filter(|&l| x[l] > T::zero()).collect();
        let coords: Vec<T> = face.iter().map(|&l| x[l].clone()).collect();
        Ok(self.g[&face].eval(&coords))
    }

    /// Closed extension `g̃_J` at a point of `ℝ^K_{≥0}` given by `y` (indexed like `k`),
    /// with the coordinates in `J ∖ K` set to zero.
    pub fn closed_extension<T: Scalar>(&self, j: &[usize], k: &[usize], y: &[T]) -> T {
        let coords: Vec<T> = j
            .iter()
            .map(|l| match k.iter().position(|m| m == l) {
                Some(p) => y[p].clone(),
                None => T::zero(),
            })
            .collect();
        self.g[j].eval(&coords)
    }
}

pub fn face_key(face: &[usize]) -> String {
    let one_based: Vec<String> = face.iter().map(|l| (l + 1).to_string()).collect();
    format!("[{}]", one_based.join(","))
}

pub fn parse_face_key(key: &str, m: usize) -> Result<Vec<usize>> {
    let inner = key
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("face key {key:?} is not of the form [i,j,..]")))?;
    let mut face = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let l: usize = part.parse().map_err(|_| Error::Parse(format!("bad face index {part:?}")))?;
        if l == 0 || l > m {
            return Err(Error::Parse(format!("face index {l} outside 1..={m}")));
        }
        face.push(l - 1);
    }
    face.sort_unstable();
    face.dedup();
    Ok(face)
}

impl Serialize for FacewiseMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut g = serde_json::Map::new();
        for (face, p) in &self.g {
            let v = match p.coefficient_list() {
                Some(cs) => Value::Array(cs.iter().map(|c| Value::String(format_rational(c))).collect()),
                None => Value::Array(
                    p.terms
                        .iter()
                        .map(|t| serde_json::json!({ "c": format_rational(&t.c), "e": t.e }))
                        .collect(),
                ),
            };
            g.insert(face_key(face), v);
        }
        serde_json::json!({ "m": self.m, "g": g }).serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFacewise {
    m: usize,
    g: BTreeMap<String, Vec<Value>>,
}

fn parse_poly(nvars: usize, items: &[Value]) -> Result<MultiPoly> {
    if items.iter().all(|v| v.is_object()) && !items.is_empty() {
        let terms = items
            .iter()
            .map(|v| {
                let c = rational_serde::from_value(v.get("c").ok_or_else(|| Error::Parse("term needs \"c\"".into()))?)?;
                let e = v
                    .get("e")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("term needs an \"e\" array".into()))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| Error::Parse("bad exponent".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Term { c, e })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::new(nvars, terms)
    } else {
        let coeffs = items.iter().map(rational_serde::from_value).collect::<Result<Vec<_>>>()?;
        MultiPoly::univariate(nvars, &coeffs)
    }
}

impl<'de> Deserialize<'de> for FacewiseMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawFacewise::deserialize(d)?;
        let build = || -> Result<FacewiseMap> {
            let mut g = BTreeMap::new();
            for (key, items) in &raw.g {
                let face = parse_face_key(key, raw.m)?;
                let p = parse_poly(face.len(), items)?;
                if g.insert(face, p).is_some() {
                    return Err(Error::Parse(format!("face {key} given twice")));
                }
            }
            FacewiseMap::new(raw.m, g)
        };
        build().map_err(D::Error::custom)
    }
}

/// `0 ≤ g̃_K ≤ g̃_J` on `grid^{|K|}` for every pair `K ⊆ J`.
pub fn facewise_extension_check(f: &FacewiseMap, grid: &[Rational]) -> bool {
    let faces = subsets(f.m);
    for j in &faces {
        for k in faces.iter().filter(|k| k.iter().all(|l| j.contains(l))) {
            for y in grid_points(grid, k.len()) {
                let gk = f.closed_extension(k, k, &y);
                let gj = f.closed_extension(j, k, &y);
                if gk < Rational::zero() || gk > gj {
                    return false;
                }
            }
        }
    }
    true
}

fn grid_points(grid: &[Rational], dim: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Entrywise `F(a_{1,ij}, …, a_{m,ij})`.
pub fn facewise_apply<T: Scalar>(f: &FacewiseMap, mats: &[Matrix<T>]) -> Result<Matrix<T>> {
    let first = check_tuple(f, mats)?;
    let mut out = Matrix::zeros(first.rows(), first.cols());
    for i in 0..first.rows() {
        for j in 0..first.cols() {
            let x: Vec<T> = mats.iter().map(|a| a[(i, j)].clone()).collect();
            out[(i, j)] = f.eval(&x).map_err(|e| match e {
                Error::Domain(msg) => Error::Domain(format!("entry ({i},{j}): {msg}")),
                other => other,
            })?;
        }
    }
    Ok(out)
}

fn check_tuple<'a, T: Scalar>(f: &FacewiseMap, mats: &'a [Matrix<T>]) -> Result<&'a Matrix<T>> {
    if mats.len() != f.m {
        return Err(Error::Dimension(format!("expected {} matrices, got {}", f.m, mats.len())));
    }
    let first = &mats[0];
    for a in mats {
        first.ensure_same_shape(a)?;
    }
    Ok(first)
}

/// `F[A_1..A_m] = corner · E_00 + g_K[A_l : l ∈ K]`.
#[derive(Clone, PartialEq)]
pub struct FacewiseDecomposition<T> {
    /// `{l : a_{l,00} > 0}`.
    pub j: Vec<usize>,
    /// `{l : a_{l,11} > 0}`.
    pub k: Vec<usize>,
    /// `g_J(a_{l,00} : l ∈ J) − g_K(a_{l,00} : l ∈ K)`.
    pub corner: T,
    pub rest: Matrix<T>,
}

impl<T: Scalar> std::fmt::Debug for FacewiseDecomposition<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FacewiseDecomposition")
            .field("j", &self.j)
            .field("k", &self.k)
            .field("corner", &format_args!("{}", self.corner))
            .field("rest", &self.rest)
            .finish()
    }
}

impl<T: Scalar> FacewiseDecomposition<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let mut out = self.rest.clone();
        out[(0, 0)] = out[(0, 0)].clone() + self.corner.clone();
        out
    }
}

/// Splits `F[A_1..A_m]` for Hankel matrices of measures on `[0,1]`, where a
/// zero `(1,1)` entry forces the whole matrix to be a multiple of `E_00`.
pub fn facewise_decompose<T: Scalar>(
    f: &FacewiseMap,
    mats: &[Matrix<T>],
) -> Result<FacewiseDecomposition<T>> {
    let first = check_tuple(f, mats)?;
    if !first.is_square() || first.rows() < 2 {
        return Err(Error::Dimension("decomposition needs square matrices of size >= 2".into()));
    }
    for (l, a) in mats.iter().enumerate() {
        if !a.is_hankel() {
            return Err(Error::Structure(format!("matrix {} is not Hankel", l + 1)));
        }
        if a.entries().any(|v| *v < T::zero()) {
            return Err(Error::Domain(format!("matrix {} has a negative entry", l + 1)));
        }
        let degenerate = a[(1, 1)].is_zero();
        if degenerate && a.indexed().any(|((i, j), v)| (i, j) != (0, 0) && !v.is_zero()) {
            return Err(Error::Structure(format!(
                "matrix {} has a zero (2,2) entry but is not a multiple of E_11",
                l + 1
            )));
        }
    }
    let j: Vec<usize> = (0..f.m).filter(|&l| mats[l][(0, 0)] > T::zero()).collect();
    let k: Vec<usize> = (0..f.m).filter(|&l| mats[l][(1, 1)] > T::zero()).collect();
    let at = |face: &[usize], i: usize, jj: usize| -> T {
        let coords: Vec<T> = face.iter().map(|&l| mats[l][(i, jj)].clone()).collect();
        f.g(face).eval(&coords)
    };
    let corner = at(&j, 0, 0) - at(&k, 0, 0);
    let n = first.rows();
    let rest = Matrix::from_fn(n, n, |i, jj| at(&k, i, jj));
    Ok(FacewiseDecomposition { j, k, corner, rest })
}
