//! Explicit curve models shipped as a fixture file.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Deserialize;

use super::mpoly::{parse_equation, parse_system, MPoly};
use super::{genus_superelliptic_general, HyperellipticModel, ModelError};
use crate::exact::{parse_poly, parse_rat, BigRat, QPoly};

const MODELS_JSON: &str = include_str!("../../data/models.json");

#[derive(Deserialize)]
struct RawRegistry {
    schema: u32,
    models: Vec<RawModel>,
}

#[derive(Deserialize, Clone)]
struct RawModel {
    name: String,
    tag: String,
    kind: String,
    #[serde(default)]
    m: Option<u32>,
    equations: Vec<String>,
    genus: i64,
    #[serde(default)]
    stated_points: Option<usize>,
    points: Vec<String>,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveEquation {
    /// `y^2 = w(x)`
    Hyperelliptic(QPoly),
    /// `y^m = f(x)`
    Superelliptic { m: u32, f: QPoly },
    /// A homogeneous form in x, y, z.
    Plane(MPoly),
    /// Affine or projective intersection, each entry `= 0`.
    System(Vec<MPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownPoint {
    Infinity,
    /// Coordinates by variable name.
    Affine(Vec<(char, BigRat)>),
    /// Projective coordinates in sorted variable order.
    Projective(Vec<BigRat>),
}

#[derive(Clone, Debug)]
pub struct RegistryModel {
    pub name: String,
    pub tag: String,
    pub equation: CurveEquation,
    /// Equations as written in the fixture.
    pub text: Vec<String>,
    pub stated_genus: i64,
    pub points: Vec<KnownPoint>,
    pub stated_point_count: Option<usize>,
    pub note: Option<String>,
}

fn bad(name: &str, why: impl std::fmt::Display) -> ModelError {
    ModelError::UnknownModel(format!("{name}: {why}"))
}

fn parse_point(name: &str, s: &str) -> Result<KnownPoint, ModelError> {
    if s == "inf" {
        return Ok(KnownPoint::Infinity);
    }
    if s.contains(':') {
        let c: Result<Vec<BigRat>, _> = s.split(':').map(|c| parse_rat(c.trim())).collect();
        return Ok(KnownPoint::Projective(c?));
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let (v, val) = part.split_once('=').ok_or_else(|| bad(name, format!("bad point {s}")))?;
        let v = v.trim().chars().next().ok_or_else(|| bad(name, format!("bad point {s}")))?;
        out.push((v, parse_rat(val.trim())?));
    }
    Ok(KnownPoint::Affine(out))
}

fn build(r: &RawModel) -> Result<RegistryModel, ModelError> {
    let first = r.equations.first().ok_or_else(|| bad(&r.name, "no equation"))?;
    let equation = match r.kind.as_str() {
        "HYPERELLIPTIC" => CurveEquation::Hyperelliptic(parse_poly(first)?),
        "SUPERELLIPTIC" => {
            CurveEquation::Superelliptic { m: r.m.ok_or_else(|| bad(&r.name, "missing m"))?, f: parse_poly(first)? }
        }
        "PLANE" => CurveEquation::Plane(parse_equation(first)?),
        "SYSTEM" => CurveEquation::System(parse_system(&r.equations)?),
        k => return Err(bad(&r.name, format!("unknown kind {k}"))),
    };
    Ok(RegistryModel {
        name: r.name.clone(),
        tag: r.tag.clone(),
        equation,
        text: r.equations.clone(),
        stated_genus: r.genus,
        points: r.points.iter().map(|p| parse_point(&r.name, p)).collect::<Result<_, _>>()?,
        stated_point_count: r.stated_points,
        note: r.note.clone(),
    })
}

fn raw() -> &'static RawRegistry {
    static REG: OnceLock<RawRegistry> = OnceLock::new();
    REG.get_or_init(|| {
        let r: RawRegistry = crate::fixtures::load("models.json", MODELS_JSON);
        assert_eq!(r.schema, 1);
        r
    })
}

pub fn registry_names() -> Vec<&'static str> {
    raw().models.iter().map(|m| m.name.as_str()).collect()
}

pub fn model_registry(name: &str) -> Result<RegistryModel, ModelError> {
    let r = raw().models.iter().find(|m| m.name == name).ok_or_else(|| ModelError::UnknownModel(name.to_string()))?;
    build(r)
}

impl RegistryModel {
    /// Genus from the equation where a formula applies; `None` for systems,
    /// whose genus is taken as stated.
    pub fn computed_genus(&self) -> Result<Option<i64>, ModelError> {
        Ok(match &self.equation {
            CurveEquation::Hyperelliptic(w) => Some(HyperellipticModel::new(w.clone())?.genus as i64),
            CurveEquation::Superelliptic { m, f } => Some(genus_superelliptic_general(*m, f)?),
            // smooth plane curve of degree d
            CurveEquation::Plane(f) => f.total_degree().map(|d| ((d as i64 - 1) * (d as i64 - 2)) / 2),
            CurveEquation::System(_) => None,
        })
    }

    /// Whether `p` satisfies the model's equations.
    pub fn contains(&self, p: &KnownPoint) -> bool {
        match (&self.equation, p) {
            (CurveEquation::Hyperelliptic(w), KnownPoint::Infinity) => {
                let d = w.deg_i();
                d % 2 == 1 || super::is_rational_square(&w.leading())
            }
            (CurveEquation::Superelliptic { m, f }, KnownPoint::Infinity) => {
                // a single point over infinity when m and deg f are coprime
                num_integer::Integer::gcd(&(*m as i64), &f.deg_i()) == 1
            }
            (CurveEquation::Hyperelliptic(w), KnownPoint::Affine(c)) => affine_xy(c).is_some_and(|(x, y)| &y * &y == w.eval(&x)),
            (CurveEquation::Superelliptic { m, f }, KnownPoint::Affine(c)) => {
                affine_xy(c).is_some_and(|(x, y)| num_traits::pow(y, *m as usize) == f.eval(&x))
            }
            (CurveEquation::Plane(f), KnownPoint::Projective(c)) => {
                c.len() == f.vars().len() && c.iter().any(|x| !x.is_zero()) && f.eval(c).is_zero()
            }
            (CurveEquation::System(eqs), KnownPoint::Projective(c)) => {
                c.iter().any(|x| !x.is_zero()) && eqs.iter().all(|e| c.len() == e.vars().len() && e.eval(c).is_zero())
            }
            (CurveEquation::System(eqs), KnownPoint::Affine(c)) => {
                eqs.iter().all(|e| e.eval_named(c).is_some_and(|v| v.is_zero()))
            }
            _ => false,
        }
    }
}

fn affine_xy(c: &[(char, BigRat)]) -> Option<(BigRat, BigRat)> {
    let get = |v: char| c.iter().find(|(n, _)| *n == v).map(|(_, x)| x.clone());
    Some((get('x')?, get('y')?))
}
