//! j-maps, fibered products with the j-line, hyperelliptic reduction and the
//! explicit curve registry.

mod elliptic;
pub mod mpoly;
mod registry;

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    parse_rat, parse_rf, squarefree_factors, squarefree_kernel, squarefree_part, BigInt, BigRat, ExactError, QPoly, RatFunc,
};
use crate::gl2cat::{lookup_ref, GroupError, JMapKind, JMapRef};

pub use elliptic::{level11_curve, level11_f, level11_j, EcPoint, EllipticQ, LEVEL11_CURVE};
pub use registry::{model_registry, registry_names, CurveEquation, KnownPoint, RegistryModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("a constant j-map has a zero-dimensional fiber")]
    ZeroDimensionalFiber,
    #[error("{0} has no j-map")]
    NoJMap(String),
    #[error("fibered products with the level-11 elliptic map are only available as registry models")]
    EllipticFactor,
    #[error("j-map is constant")]
    ConstantJMap,
    #[error("j-map is branched outside 0, 1728, infinity")]
    ExtraBranching,
    #[error("fibered product is reducible")]
    Reducible,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("exponent must be at least 2")]
    BadExponent,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point at infinity not allowed here")]
    AtInfinity,
    #[error("singular Weierstrass model")]
    Singular,
    #[error("unknown model {0}")]
    UnknownModel(String),
}

/// A j-map: a rational function of the parameter, a single value, or the
/// level-11 map on an elliptic curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JMap {
    RatFunc(RatFunc),
    Constant(BigRat),
    Elliptic11,
}

impl JMap {
    pub fn parse(s: &str) -> Result<JMap, ModelError> {
        let r = parse_rf(s)?;
        Ok(if r.is_constant() { JMap::Constant(r.numer().coeff(0)) } else { JMap::RatFunc(r) })
    }

    pub fn from_ref(r: &JMapRef) -> Result<Option<JMap>, ModelError> {
        Ok(match r.kind {
            JMapKind::None => None,
            JMapKind::Elliptic11 => Some(JMap::Elliptic11),
            JMapKind::Constant => Some(JMap::Constant(parse_rat(r.effective().unwrap_or("0"))?)),
            JMapKind::Ratfunc => Some(JMap::parse(r.effective().unwrap_or(""))?),
        })
    }

    /// j-map of a catalog reference such as `7:G_2`.
    pub fn of_catalog(reference: &str) -> Result<JMap, ModelError> {
        let e = lookup_ref(reference)?;
        JMap::from_ref(&e.jmap)?.ok_or_else(|| ModelError::NoJMap(reference.to_string()))
    }

    /// Whether this is `t^2 + 1728`, the map of the level-2 cyclic subgroup.
    pub fn is_square_plus_1728(&self) -> bool {
        match self {
            JMap::RatFunc(r) => r.is_polynomial() && *r.numer() == QPoly::from_i64s(&[1728, 0, 1]),
            _ => false,
        }
    }
}

impl fmt::Display for JMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JMap::RatFunc(r) => write!(f, "{r}"),
            JMap::Constant(c) => write!(f, "{c}"),
            JMap::Elliptic11 => write!(f, "J(x,y)"),
        }
    }
}

/// The three points of the j-line over which modular j-maps branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchValue {
    Zero,
    J1728,
    Infinity,
}

pub const BRANCH_VALUES: [BranchValue; 3] = [BranchValue::Zero, BranchValue::J1728, BranchValue::Infinity];

/// Ramification indices of a j-map over 0, 1728 and infinity, one entry per
/// geometric point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ramification {
    pub degree: usize,
    pub over_0: Vec<u32>,
    pub over_1728: Vec<u32>,
    pub over_infinity: Vec<u32>,
}

impl Ramification {
    pub fn over(&self, v: BranchValue) -> &[u32] {
        match v {
            BranchValue::Zero => &self.over_0,
            BranchValue::J1728 => &self.over_1728,
            BranchValue::Infinity => &self.over_infinity,
        }
    }

    /// Riemann-Hurwitz for a genus-0 source branched only over the three values.
    pub fn is_complete(&self) -> bool {
        let d = self.degree as i64;
        let contrib: i64 = BRANCH_VALUES.iter().map(|&v| d - self.over(v).len() as i64).sum();
        contrib == 2 * d - 2
    }
}

/// Multiplicities of the roots of `p`, with `missing` extra copies of
/// multiplicity `missing` for the point t = infinity.
fn fiber_indices(p: &QPoly, missing: usize) -> Result<Vec<u32>, ExactError> {
    let mut out = Vec::new();
    if p.deg_i() > 0 {
        for (i, a) in squarefree_factors(p)?.iter().enumerate() {
            for _ in 0..a.deg_i().max(0) {
                out.push(i as u32 + 1);
            }
        }
    }
    if missing > 0 {
        out.push(missing as u32);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

pub fn ramification(j: &RatFunc) -> Result<Ramification, ModelError> {
    if j.is_constant() {
        return Err(ModelError::ConstantJMap);
    }
    let (f, g) = (j.numer(), j.denom());
    let d = j.degree();
    let at = |p: &QPoly| -> Result<Vec<u32>, ExactError> { fiber_indices(p, d - p.deg_i().max(0) as usize) };
    let c1728 = QPoly::constant(BigRat::from_integer(1728.into()));
    Ok(Ramification { degree: d, over_0: at(f)?, over_1728: at(&f.sub(&g.mul(&c1728)))?, over_infinity: at(g)? })
}

/// Genus of the normalization of `{j1(s) = j2(t)}` from the ramification of
/// both maps over the branch values.
pub fn branch_genus(j1: &RatFunc, j2: &RatFunc) -> Result<i64, ModelError> {
    let (r1, r2) = (ramification(j1)?, ramification(j2)?);
    if !r1.is_complete() || !r2.is_complete() {
        return Err(ModelError::ExtraBranching);
    }
    let mut two_g_minus_2 = -2 * (r1.degree * r2.degree) as i64;
    for v in BRANCH_VALUES {
        for &e1 in r1.over(v) {
            for &e2 in r2.over(v) {
                let g = e1.gcd(&e2) as i64;
                let l = e1.lcm(&e2) as i64;
                two_g_minus_2 += g * (l - 1);
            }
        }
    }
    if two_g_minus_2 < -2 || two_g_minus_2 % 2 != 0 {
        return Err(ModelError::Reducible);
    }
    Ok(two_g_minus_2 / 2 + 1)
}

/// `y^2 = w(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub w: QPoly,
    pub genus: usize,
}

impl HyperellipticModel {
    pub fn new(w: QPoly) -> Result<Self, ModelError> {
        if w.deg_i() < 1 {
            return Err(ModelError::Reducible);
        }
        if !w.is_squarefree() {
            return Err(ModelError::NotSquarefree);
        }
        let genus = (w.degree().unwrap() - 1) / 2;
        Ok(HyperellipticModel { w, genus })
    }
}

/// The reduction of `s^2 + 1728 = f/g`: `f g - 1728 g^2 = c h^2 w0` with
/// `c = a^2 d`, `d` a squarefree integer; the model is `y^2 = d w0` via
/// `y = g s / (a h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticReduction {
    pub f: QPoly,
    pub g: QPoly,
    pub product: QPoly,
    pub c: BigRat,
    pub h: QPoly,
    pub w0: QPoly,
    pub d: BigInt,
    pub a: BigRat,
    pub model: HyperellipticModel,
}

impl HyperellipticReduction {
    /// `y` in terms of `(t, s)`; `None` where `a h(t) = 0`.
    pub fn y_of(&self, t: &BigRat, s: &BigRat) -> Option<BigRat> {
        let den = &self.a * self.h.eval(t);
        (!den.is_zero()).then(|| self.g.eval(t) * s / den)
    }

    /// The defining identity `f g - 1728 g^2 = c h^2 w0`.
    pub fn identity_holds(&self) -> bool {
        let rhs = self.h.mul(&self.h).mul(&self.w0).scale(&self.c);
        let lhs = self.f.mul(&self.g).sub(&self.g.mul(&self.g).scale(&BigRat::from_integer(1728.into())));
        lhs == rhs && self.product == lhs
    }
}

pub fn hyperelliptic_reduce(j: &RatFunc) -> Result<HyperellipticReduction, ModelError> {
    if j.is_constant() {
        return Err(ModelError::ConstantJMap);
    }
    let f = j.numer().clone();
    let g = j.denom().clone();
    let product = f.mul(&g).sub(&g.mul(&g).scale(&BigRat::from_integer(1728.into())));
    assert!(!product.is_zero(), "f g - 1728 g^2 vanishes for a nonconstant j");
    let split = squarefree_part(&product)?;
    // c = n/m = (n m) / m^2;  n m = k^2 d
    let nm = split.c.numer() * split.c.denom();
    let (d, k) = squarefree_kernel(&nm)?;
    let a = BigRat::new(k, split.c.denom().clone());
    let w = split.w.scale(&BigRat::from_integer(d.clone()));
    let model = HyperellipticModel::new(w)?;
    Ok(HyperellipticReduction { f, g, product, c: split.c, h: split.h, w0: split.w, d, a, model })
}

/// `r` with `w = r * target`, when the two differ by a scalar.
pub fn scalar_ratio(w: &QPoly, target: &QPoly) -> Option<BigRat> {
    if w.degree() != target.degree() || target.is_zero() {
        return None;
    }
    let r = w.leading() / target.leading();
    (target.scale(&r) == *w).then_some(r)
}

pub fn is_rational_square(r: &BigRat) -> bool {
    if r.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    sq(r.numer()) && sq(r.denom())
}

/// The fibered product written as `left(s) = right(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSystem {
    pub left: RatFunc,
    pub right: RatFunc,
}

impl fmt::Display for RawSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left.to_string_var("s"), self.right.to_string_var("t"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeModel {
    pub left: String,
    pub right: String,
    pub raw: RawSystem,
    pub reduced: Option<HyperellipticReduction>,
    /// Genus of the normalization from ramification data, when computable.
    pub branch_genus: Option<i64>,
}

impl CompositeModel {
    pub fn genus(&self) -> Option<i64> {
        self.reduced.as_ref().map(|r| r.model.genus as i64).or(self.branch_genus)
    }
}

/// Fibered product of two j-maps; reduced to `y^2 = w` when one side is
/// `t^2 + 1728`.
pub fn fiber_product(j1: &JMap, j2: &JMap) -> Result<CompositeModel, ModelError> {
    fiber_product_labeled(j1, "left", j2, "right")
}

pub fn fiber_product_labeled(j1: &JMap, l1: &str, j2: &JMap, l2: &str) -> Result<CompositeModel, ModelError> {
    let (r1, r2) = match (j1, j2) {
        (JMap::Constant(_), _) | (_, JMap::Constant(_)) => return Err(ModelError::ZeroDimensionalFiber),
        (JMap::Elliptic11, _) | (_, JMap::Elliptic11) => return Err(ModelError::EllipticFactor),
        (JMap::RatFunc(a), JMap::RatFunc(b)) => (a, b),
    };
    // put the square map on the left
    let (r1, l1, r2, l2) =
        if !j1.is_square_plus_1728() && j2.is_square_plus_1728() { (r2, l2, r1, l1) } else { (r1, l1, r2, l2) };
    let reduced = if j1.is_square_plus_1728() || j2.is_square_plus_1728() {
        match hyperelliptic_reduce(r2) {
            Ok(r) => Some(r),
            Err(ModelError::Reducible) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let branch = match branch_genus(r1, r2) {
        Ok(g) => Some(g),
        Err(ModelError::ExtraBranching | ModelError::Reducible) => None,
        Err(e) => return Err(e),
    };
    Ok(CompositeModel {
        left: l1.to_string(),
        right: l2.to_string(),
        raw: RawSystem { left: r1.clone(), right: r2.clone() },
        reduced,
        branch_genus: branch,
    })
}

/// Fibered product of two catalog entries, e.g. `("2:G_3", "7:G_2")`.
pub fn composite_model(left: &str, right: &str) -> Result<CompositeModel, ModelError> {
    let j1 = JMap::of_catalog(left)?;
    let j2 = JMap::of_catalog(right)?;
    fiber_product_labeled(&j1, left, &j2, right)
}

/// Genus of `y^m = f(x)` for squarefree `f`.
pub fn genus_superelliptic(m: u32, f: &QPoly) -> Result<i64, ModelError> {
    if m < 2 {
        return Err(ModelError::BadExponent);
    }
    if f.deg_i() < 1 || !f.is_squarefree() {
        return Err(ModelError::NotSquarefree);
    }
    let (m, n) = (m as i64, f.deg_i());
    Ok(((m - 1) * (n - 1) + 1 - m.gcd(&n)) / 2)
}

/// Genus of the normalization of `y^m = f(x)` for any nonconstant `f` with
/// the curve geometrically irreducible.
pub fn genus_superelliptic_general(m: u32, f: &QPoly) -> Result<i64, ModelError> {
    if m < 2 {
        return Err(ModelError::BadExponent);
    }
    if f.deg_i() < 1 {
        return Err(ModelError::Reducible);
    }
    let m = m as i64;
    let mut two_g_minus_2 = -2 * m;
    let mut all = 0i64;
    for (i, a) in squarefree_factors(f)?.iter().enumerate() {
        let e = i as i64 + 1;
        if a.deg_i() > 0 {
            all = all.gcd(&e);
            two_g_minus_2 += a.deg_i() * (m - m.gcd(&e));
        }
    }
    if all.gcd(&m) != 1 {
        return Err(ModelError::Reducible);
    }
    two_g_minus_2 += m - m.gcd(&f.deg_i());
    Ok(two_g_minus_2 / 2 + 1)
}

#[cfg(test)]
mod tests;
